//! Exact row reduction over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the reduced form, one per pivot.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination. Columns are processed left to right, so the
/// caller decides pivot priority through the column order.
pub fn row_reduce(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Echelon {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = Rational::one() / &rows[top][col];
        for c in rows[top].iter_mut().skip(col) {
            *c *= &inv;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[c] -= &factor * pv;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon { rows, pivots }
}
