//! Monomial orderings.
//!
//! Two base orders are provided: degree reverse lexicographic (a global
//! well-order, used for Gröbner bases, elimination and ideal equality) and its
//! negative-degree counterpart (a local order, used for standard bases of the
//! localization at the origin). Block orders put an elimination block of
//! leading variables in front.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BaseOrder {
    /// Higher total degree is larger; ties broken reverse-lexicographically.
    DegRevLex,
    /// Lower total degree is larger; ties broken as in `DegRevLex`.
    NegDegRevLex,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    Base(BaseOrder),
    /// The first `elim` variables are compared first under degrevlex; the
    /// remaining ones break ties under `inner`. Any monomial involving an
    /// eliminated variable exceeds every monomial free of them.
    Block { elim: usize, inner: BaseOrder },
    /// Variable 0 is a homogenizing variable: total degree over all
    /// variables first, then `inner` on the remaining ones. Only meaningful
    /// for homogeneous polynomials, where it turns a local order into one
    /// that Buchberger's algorithm can complete.
    Homogenized(BaseOrder),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrdering {
    kind: OrderKind,
    nvars: usize,
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex_tie(a, b))
}

fn negdegrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| revlex_tie(a, b))
}

// the last differing exponent decides; the smaller exponent wins
fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn base_cmp(base: BaseOrder, a: &[u32], b: &[u32]) -> Ordering {
    match base {
        BaseOrder::DegRevLex => degrevlex(a, b),
        BaseOrder::NegDegRevLex => negdegrevlex(a, b),
    }
}

impl MonomialOrdering {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrdering {
            kind: OrderKind::Base(BaseOrder::DegRevLex),
            nvars,
        }
    }

    /// Negative degree reverse lexicographic order, local at the origin.
    pub fn local(nvars: usize) -> Self {
        MonomialOrdering {
            kind: OrderKind::Base(BaseOrder::NegDegRevLex),
            nvars,
        }
    }

    pub fn block(nvars: usize, elim: usize, inner: BaseOrder) -> Self {
        assert!(elim <= nvars, "elimination block larger than the ring");
        MonomialOrdering {
            kind: OrderKind::Block { elim, inner },
            nvars,
        }
    }

    /// See [`OrderKind::Homogenized`]; `nvars` counts the homogenizing variable.
    pub fn homogenized(nvars: usize, inner: BaseOrder) -> Self {
        assert!(nvars >= 1, "homogenized ring needs its extra variable");
        MonomialOrdering {
            kind: OrderKind::Homogenized(inner),
            nvars,
        }
    }

    /// Global order eliminating the first `elim` variables.
    pub fn elimination(nvars: usize, elim: usize) -> Self {
        Self::block(nvars, elim, BaseOrder::DegRevLex)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Every variable is larger than 1.
    pub fn is_global(&self) -> bool {
        match self.kind {
            OrderKind::Base(b) => b == BaseOrder::DegRevLex,
            OrderKind::Block { elim, inner } => {
                inner == BaseOrder::DegRevLex || elim == self.nvars
            }
            OrderKind::Homogenized(inner) => inner == BaseOrder::DegRevLex,
        }
    }

    /// Every variable is smaller than 1.
    pub fn is_local(&self) -> bool {
        match self.kind {
            OrderKind::Base(b) => b == BaseOrder::NegDegRevLex,
            OrderKind::Block { elim, inner } => elim == 0 && inner == BaseOrder::NegDegRevLex,
            OrderKind::Homogenized(_) => false,
        }
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        Error::check_vars(self.nvars, a.nvars())?;
        Error::check_vars(self.nvars, b.nvars())?;
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; both monomials must have `nvars` exponents.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        debug_assert_eq!(a.len(), b.len());
        match self.kind {
            OrderKind::Base(base) => base_cmp(base, a, b),
            OrderKind::Block { elim, inner } => degrevlex(&a[..elim], &b[..elim])
                .then_with(|| base_cmp(inner, &a[elim..], &b[elim..])),
            OrderKind::Homogenized(inner) => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| base_cmp(inner, &a[1..], &b[1..]))
            }
        }
    }

    pub fn leading_term(&self, p: &Polynomial) -> Result<(Monomial, Rational)> {
        Error::check_vars(self.nvars, p.nvars())?;
        p.terms()
            .max_by(|a, b| self.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Result<Monomial> {
        self.leading_term(p).map(|(m, _)| m)
    }
}

/// Total degree of `p` minus the degree of its leading monomial.
pub fn ecart(p: &Polynomial, ord: &MonomialOrdering) -> Result<u32> {
    let lm = ord.leading_monomial(p)?;
    Ok(p.total_degree().unwrap_or(0) - lm.degree())
}
