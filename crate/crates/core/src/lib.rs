pub mod error;
pub mod gbasis;
pub mod ideals;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod polar;
pub mod cli;
