use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VarIndexOutOfRange { index: usize, nvars: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange { size: usize, rows: usize, cols: usize },

    #[error("cannot eliminate {count} of {nvars} variables")]
    EliminationRange { count: usize, nvars: usize },

    #[error("invalid stratified germ: {0}")]
    InvalidGerm(String),

    #[error("stratum '{0}' has dimension 0; no Morse number is defined there")]
    OriginStratum(String),

    #[error("linear form must be linear, homogeneous and nonzero")]
    NotLinearForm,

    #[error("stratum '{stratum}': infinite intersection multiplicity (l is not general or f has no isolated stratified singularity)")]
    NotGeneralOrNotIsolated { stratum: String },

    #[error("stratum '{stratum}': polar locus has local dimension {dim} > 1 (l is not general)")]
    NotGeneral { stratum: String, dim: usize },

    #[error("stratum '{stratum}': negative Morse number ({mult_f} - {mult_l})")]
    NegativeMorseNumber { stratum: String, mult_f: u64, mult_l: u64 },

    #[error("{message} at line {line}, column {column}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no admissible l found after {attempts} attempts")]
    NoAdmissibleLinearForm { attempts: u32 },
}

impl Error {
    pub(crate) fn check_vars(left: usize, right: usize) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left, right })
        }
    }
}
