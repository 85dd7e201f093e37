//! Polar curves and Morse numbers of a function germ on a stratified germ.
//!
//! For a positive-dimensional stratum `V` the polar curve `Γ_V(l, f)` is the
//! closure of the critical locus of the pair `(l, f)` restricted to `V`. The
//! Morse number is the difference of two intersection multiplicities at the
//! origin:
//!
//! ```text
//! m_V = mult_0(Γ_V, {f = 0}) - mult_0(Γ_V, {l = 0})
//! ```
//!
//! Each multiplicity is the colength of `I(Γ_V) + (f)` (resp. `+ (l)`) in the
//! local ring, computed from a Mora standard basis; no branch parametrization
//! is needed.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{self, Ideal, LocalDimension, Multiplicity};
use crate::gbasis::monomials_below_degree;
use crate::linalg;
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug)]
pub struct Stratum {
    name: String,
    dim: usize,
    closure: Ideal,
}

impl Stratum {
    pub fn new(name: impl Into<String>, dim: usize, closure: Ideal) -> Self {
        Stratum {
            name: name.into(),
            dim,
            closure,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Generators of the ideal of the stratum closure.
    pub fn closure(&self) -> &Ideal {
        &self.closure
    }
}

/// Ambient variables plus strata sorted by dimension, the origin first.
///
/// Strata are trusted input: only dimensions and origin membership are
/// validated, not the Whitney conditions.
#[derive(Clone, Debug)]
pub struct StratifiedGerm {
    variables: Vec<String>,
    strata: Vec<Stratum>,
}

impl StratifiedGerm {
    pub fn new(variables: Vec<String>, mut strata: Vec<Stratum>) -> Result<Self> {
        let n = variables.len();
        let invalid = |msg: String| Err(Error::InvalidGerm(msg));
        if n == 0 {
            return invalid("no variables declared".into());
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v.as_str()) {
                return invalid(format!("duplicate variable '{v}'"));
            }
        }
        let mut names = HashSet::new();
        for s in &strata {
            if !names.insert(s.name.as_str()) {
                return invalid(format!("duplicate stratum '{}'", s.name));
            }
            Error::check_vars(n, s.closure.nvars())?;
            if s.dim > n {
                return invalid(format!(
                    "stratum '{}' has dimension {} > ambient dimension {n}",
                    s.name, s.dim
                ));
            }
        }
        strata.sort_by_key(|s| s.dim);
        let origins: Vec<&Stratum> = strata.iter().filter(|s| s.dim == 0).collect();
        match origins.as_slice() {
            [] => return invalid("origin stratum required".into()),
            [o] => {
                if !ideals::ideal_equal(&o.closure, &Ideal::maximal(n))? {
                    return invalid(format!(
                        "origin stratum '{}' must have the maximal ideal as closure",
                        o.name
                    ));
                }
            }
            _ => return invalid("more than one stratum of dimension 0".into()),
        }
        if strata.len() < 2 {
            return invalid("at least one positive-dimensional stratum required".into());
        }
        for s in &strata {
            if s.closure.generators().iter().any(|g| !g.constant_term().is_zero()) {
                return invalid(format!("closure of stratum '{}' does not contain the origin", s.name));
            }
            let d = ideals::local_dimension(&s.closure)?;
            if d != LocalDimension::Dim(s.dim) {
                return invalid(format!(
                    "stratum '{}' declared dimension {} but its closure has local dimension {d}",
                    s.name, s.dim
                ));
            }
        }
        Ok(StratifiedGerm { variables, strata })
    }

    /// `C^n` with its trivial stratification: the origin and the rest.
    pub fn smooth(variables: Vec<String>) -> Result<Self> {
        let n = variables.len();
        StratifiedGerm::new(
            variables,
            vec![
                Stratum::new("O", 0, Ideal::maximal(n)),
                Stratum::new("X", n, Ideal::zero(n)),
            ],
        )
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, name: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.name == name)
    }

    pub fn positive_strata(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| s.dim > 0)
    }

    /// A single open stratum filling the ambient space.
    pub fn is_smooth(&self) -> bool {
        let positive: Vec<&Stratum> = self.positive_strata().collect();
        matches!(positive.as_slice(), [s] if s.dim == self.nvars() && s.closure.is_zero())
    }

    /// Pulls every closure ideal back along `x_i ↦ images[i]`.
    pub fn pull_back(&self, images: &[Polynomial]) -> Result<StratifiedGerm> {
        let strata = self
            .strata
            .iter()
            .map(|s| {
                let gens = s
                    .closure
                    .generators()
                    .iter()
                    .map(|g| g.compose(images))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Stratum::new(s.name.clone(), s.dim, Ideal::new(self.nvars(), gens)?))
            })
            .collect::<Result<Vec<_>>>()?;
        StratifiedGerm::new(self.variables.clone(), strata)
    }
}

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<Polynomial>>,
    ncols: usize,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<Polynomial>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        PolyMatrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// Laplace expansion along the first selected row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        let n = self.rows.first().map_or(0, |r| r.first().map_or(0, Polynomial::nvars));
        match rows.len() {
            0 => Polynomial::one(n),
            1 => self.rows[rows[0]][cols[0]].clone(),
            _ => {
                let mut acc = Polynomial::zero(self.rows[rows[0]][cols[0]].nvars());
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self.rows[rows[0]][c];
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let sub = a * &self.minor(&rows[1..], &rest);
                    acc = if k % 2 == 0 { &acc + &sub } else { &acc - &sub };
                }
                acc
            }
        }
    }
}

/// Rows: gradients of each generator, then of `f`, then of `l`.
pub fn jacobian_matrix(gens: &[Polynomial], f: &Polynomial, l: &Polynomial) -> Result<PolyMatrix> {
    let n = f.nvars();
    Error::check_vars(n, l.nvars())?;
    for g in gens {
        Error::check_vars(n, g.nvars())?;
    }
    let rows = gens
        .iter()
        .chain([f, l])
        .map(Polynomial::gradient)
        .collect();
    Ok(PolyMatrix::new(rows, n))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ideal generated by all `size × size` minors.
pub fn minors_ideal(m: &PolyMatrix, size: usize) -> Result<Ideal> {
    if size == 0 || size > m.nrows().min(m.ncols()) {
        return Err(Error::MinorSizeOutOfRange {
            size,
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.entry(0, 0).nvars();
    let mut gens: Vec<Polynomial> = Vec::new();
    for rows in combinations(m.nrows(), size) {
        for cols in combinations(m.ncols(), size) {
            let d = m.minor(&rows, &cols);
            if !d.is_zero() && !gens.contains(&d) {
                gens.push(d);
            }
        }
    }
    Ideal::new(n, gens)
}

fn check_inputs(germ: &StratifiedGerm, f: &Polynomial, l: &Polynomial) -> Result<()> {
    Error::check_vars(germ.nvars(), f.nvars())?;
    Error::check_vars(germ.nvars(), l.nvars())?;
    if !l.is_linear_form() {
        return Err(Error::NotLinearForm);
    }
    Ok(())
}

/// Ideal of the polar curve `Γ_V(l, f)`.
///
/// One-dimensional strata are their own polar curves. Otherwise the
/// stratified critical locus of `(l, f)` on `V̄` is cut out by the closure
/// ideal and the `(N - dim V + 2)`-minors of the Jacobian of
/// `(closure generators, f, l)`; saturating by the product of all
/// lower-dimensional closure ideals removes components inside `∂V` and any
/// embedded component at the origin.
pub fn polar_ideal(
    germ: &StratifiedGerm,
    stratum: &Stratum,
    f: &Polynomial,
    l: &Polynomial,
) -> Result<Ideal> {
    Error::check_vars(germ.nvars(), f.nvars())?;
    Error::check_vars(germ.nvars(), l.nvars())?;
    if stratum.dim == 0 {
        return Err(Error::OriginStratum(stratum.name.clone()));
    }
    if stratum.dim == 1 {
        return Ok(stratum.closure.clone());
    }
    let n = germ.nvars();
    let size = n - stratum.dim + 2;
    let jac = jacobian_matrix(stratum.closure.generators(), f, l)?;
    let critical = if size > jac.nrows().min(jac.ncols()) {
        stratum.closure.clone()
    } else {
        stratum.closure.sum(&minors_ideal(&jac, size)?)?
    };
    // Saturating by a product equals saturating by each factor in turn, and
    // only radicals matter: every closure contains the origin, so the
    // maximal ideal is redundant next to any positive-dimensional factor.
    let lower: Vec<&Stratum> = germ.strata.iter().filter(|s| s.dim < stratum.dim).collect();
    let mut result = critical;
    for s in lower.iter().filter(|s| s.dim > 0 || lower.len() == 1) {
        result = ideals::saturate(&result, &s.closure)?;
    }
    Ok(result)
}

/// Pass/fail entry of the genericity report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything computed for one stratum.
#[derive(Clone, Debug)]
pub struct StratumAnalysis {
    pub name: String,
    pub dim: usize,
    pub polar: Ideal,
    pub polar_dimension: LocalDimension,
    pub mult_f: Multiplicity,
    pub mult_l: Multiplicity,
    /// Local dimension of `V̄ ∩ {l = 0}`.
    pub section_dimension: LocalDimension,
}

impl StratumAnalysis {
    pub fn morse_number(&self) -> Result<u64> {
        match self.polar_dimension {
            LocalDimension::EmptyAtOrigin => return Ok(0),
            LocalDimension::Dim(d) if d > 1 => {
                return Err(Error::NotGeneral {
                    stratum: self.name.clone(),
                    dim: d,
                })
            }
            LocalDimension::Dim(_) => {}
        }
        let (Multiplicity::Finite(mf), Multiplicity::Finite(ml)) = (self.mult_f, self.mult_l) else {
            return Err(Error::NotGeneralOrNotIsolated {
                stratum: self.name.clone(),
            });
        };
        if mf < ml {
            return Err(Error::NegativeMorseNumber {
                stratum: self.name.clone(),
                mult_f: mf,
                mult_l: ml,
            });
        }
        Ok(mf - ml)
    }

    /// Necessary conditions for `l` to be general; passing them does not
    /// prove genericity.
    pub fn checks(&self) -> Vec<CheckOutcome> {
        let polar_ok = match self.polar_dimension {
            LocalDimension::EmptyAtOrigin => true,
            LocalDimension::Dim(d) => d <= 1,
        };
        let finite = self.mult_f.finite().is_some() && self.mult_l.finite().is_some();
        let expected = LocalDimension::Dim(self.dim - 1);
        vec![
            CheckOutcome {
                name: "polar_curve".into(),
                passed: polar_ok,
                detail: format!("local dimension of polar locus: {}", self.polar_dimension),
            },
            CheckOutcome {
                name: "finite_multiplicities".into(),
                passed: finite,
                detail: format!("mult_f = {}, mult_l = {}", self.mult_f, self.mult_l),
            },
            CheckOutcome {
                name: "hyperplane_section".into(),
                passed: self.section_dimension == expected,
                detail: format!(
                    "local dimension of closure ∩ {{l = 0}}: {} (expected {})",
                    self.section_dimension, expected
                ),
            },
        ]
    }

    pub fn checks_passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

pub fn analyze_stratum(
    germ: &StratifiedGerm,
    stratum: &Stratum,
    f: &Polynomial,
    l: &Polynomial,
) -> Result<StratumAnalysis> {
    check_inputs(germ, f, l)?;
    let polar = polar_ideal(germ, stratum, f, l)?;
    let polar_dimension = ideals::local_dimension(&polar)?;
    let mult_f = ideals::local_multiplicity(&polar.with_generator(f.clone())?)?;
    let mult_l = ideals::local_multiplicity(&polar.with_generator(l.clone())?)?;
    let section_dimension = ideals::local_dimension(&stratum.closure.with_generator(l.clone())?)?;
    Ok(StratumAnalysis {
        name: stratum.name.clone(),
        dim: stratum.dim,
        polar,
        polar_dimension,
        mult_f,
        mult_l,
        section_dimension,
    })
}

/// Analyses of all positive-dimensional strata, in stratum order. Strata are
/// processed in parallel.
pub fn analyze(germ: &StratifiedGerm, f: &Polynomial, l: &Polynomial) -> Result<Vec<StratumAnalysis>> {
    check_inputs(germ, f, l)?;
    let strata: Vec<&Stratum> = germ.positive_strata().collect();
    strata
        .par_iter()
        .map(|s| analyze_stratum(germ, s, f, l))
        .collect()
}

/// Morse number of `f` on one stratum, with both multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseNumber {
    pub value: u64,
    pub mult_f: u64,
    pub mult_l: u64,
}

pub fn morse_number(
    germ: &StratifiedGerm,
    stratum: &Stratum,
    f: &Polynomial,
    l: &Polynomial,
) -> Result<MorseNumber> {
    let a = analyze_stratum(germ, stratum, f, l)?;
    let value = a.morse_number()?;
    Ok(MorseNumber {
        value,
        mult_f: a.mult_f.finite().unwrap_or(0),
        mult_l: a.mult_l.finite().unwrap_or(0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumDiagnostics {
    pub name: String,
    pub dim: usize,
    pub polar_generators: Vec<Polynomial>,
    pub mult_f: u64,
    pub mult_l: u64,
}

/// The set of Morse pairs `{(V, m_V)}` over all positive-dimensional strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorsePairSet {
    pub pairs: Vec<(String, u64)>,
    pub diagnostics: Vec<StratumDiagnostics>,
}

impl MorsePairSet {
    pub fn get(&self, stratum: &str) -> Option<u64> {
        self.pairs
            .iter()
            .find(|(name, _)| name == stratum)
            .map(|(_, m)| *m)
    }

    pub fn from_analyses(analyses: &[StratumAnalysis]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(analyses.len());
        let mut diagnostics = Vec::with_capacity(analyses.len());
        for a in analyses {
            let m = a.morse_number()?;
            pairs.push((a.name.clone(), m));
            diagnostics.push(StratumDiagnostics {
                name: a.name.clone(),
                dim: a.dim,
                polar_generators: a.polar.groebner()?.generators().to_vec(),
                mult_f: a.mult_f.finite().unwrap_or(0),
                mult_l: a.mult_l.finite().unwrap_or(0),
            });
        }
        Ok(MorsePairSet { pairs, diagnostics })
    }
}

pub fn morse_pairs(germ: &StratifiedGerm, f: &Polynomial, l: &Polynomial) -> Result<MorsePairSet> {
    MorsePairSet::from_analyses(&analyze(germ, f, l)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumChecks {
    pub stratum: String,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub strata: Vec<StratumChecks>,
}

impl GenericityReport {
    pub fn from_analyses(analyses: &[StratumAnalysis]) -> Self {
        GenericityReport {
            strata: analyses
                .iter()
                .map(|a| StratumChecks {
                    stratum: a.name.clone(),
                    checks: a.checks(),
                })
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.strata.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn failures(&self) -> Vec<(&str, &CheckOutcome)> {
        self.strata
            .iter()
            .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(move |c| (s.stratum.as_str(), c)))
            .collect()
    }
}

pub fn genericity_check(germ: &StratifiedGerm, f: &Polynomial, l: &Polynomial) -> Result<GenericityReport> {
    Ok(GenericityReport::from_analyses(&analyze(germ, f, l)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Milnor(u64),
    /// The truncation degree was too small to certify the count.
    Inconclusive,
}

/// Milnor number `dim Q[x]_(x) / (∂f/∂x_i)` by truncated linear algebra,
/// independent of the standard-basis engine.
///
/// The Jacobian ideal is spanned, modulo `m^D`, by the truncated monomial
/// multiples of the partials. If every monomial of degree `D - 1` lies in
/// that span then `m^{D-1} ⊆ J + m^D`, hence `m^{D-1} ⊆ J` by Nakayama, and
/// the codimension of the span is the exact Milnor number.
pub fn milnor_oracle(f: &Polynomial, degree_bound: u32) -> OracleOutcome {
    if degree_bound == 0 {
        return OracleOutcome::Inconclusive;
    }
    let n = f.nvars();
    let columns = monomials_below_degree(n, degree_bound);
    let index: std::collections::HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in f.gradient().iter().filter(|p| !p.is_zero()) {
        for shift in &columns {
            let mut row = vec![Rational::zero(); columns.len()];
            let mut any = false;
            for (m, c) in p.terms() {
                if let Some(&col) = index.get(&m.mul(shift)) {
                    row[col] = c.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let ech = linalg::row_reduce(rows, columns.len());
    let top: Vec<usize> = columns
        .iter()
        .enumerate()
        .filter(|(_, m)| m.degree() == degree_bound - 1)
        .map(|(i, _)| i)
        .collect();
    let in_span = |col: usize| {
        let mut v = vec![Rational::zero(); columns.len()];
        v[col] = Rational::one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    };
    if !top.into_iter().all(in_span) {
        return OracleOutcome::Inconclusive;
    }
    OracleOutcome::Milnor((columns.len() - ech.rank()) as u64)
}

/// Runs [`milnor_oracle`] with increasing truncation degree.
pub fn milnor_number(f: &Polynomial, start: u32, max: u32) -> Option<u64> {
    (start.max(1)..=max).find_map(|d| match milnor_oracle(f, d) {
        OracleOutcome::Milnor(m) => Some(m),
        OracleOutcome::Inconclusive => None,
    })
}
