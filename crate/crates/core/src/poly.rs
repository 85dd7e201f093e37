//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] lives in a fixed number of variables; the variable names
//! only matter for parsing and rendering and are kept outside of this type.
//! The term map is keyed by exponent vector and never stores a zero
//! coefficient, so structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrdering;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of a monomial.
///
/// The derived `Ord` is plain lexicographic comparison of the exponent vectors
/// and only serves as a canonical storage key. Term orders live in
/// [`crate::order`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^e`, e > 0.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// Sparse polynomial over the rationals in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The variable `x_index`. Panics if the index is out of range.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from (possibly repeated) terms, summing duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            Error::check_vars(nvars, m.nvars())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// True for a nonzero polynomial all of whose terms have degree one.
    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.degree() == 1)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        Error::check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        Error::check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        Error::check_vars(self.nvars, other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::VarIndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[index] -= 1;
            out.add_term(Monomial(d), c * rat(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        Error::check_vars(self.nvars, point.len())?;
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Replaces `x_index` by `q`.
    pub fn substitute(&self, index: usize, q: &Polynomial) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::VarIndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        Error::check_vars(self.nvars, q.nvars)?;
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                if i == index {
                    q.clone()
                } else {
                    Polynomial::var(self.nvars, i)
                }
            })
            .collect();
        self.compose(&images)
    }

    /// Simultaneous substitution `x_i ↦ images[i]`. The images may live in a
    /// different ring than `self`; they must all share one variable count.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        Error::check_vars(self.nvars, images.len())?;
        let target = images.first().map_or(0, |p| p.nvars);
        for p in images {
            Error::check_vars(target, p.nvars)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Re-indexes into a ring of `nvars` variables, sending `x_i` to `x_{i+shift}`.
    pub fn embed(&self, nvars: usize, shift: usize) -> Polynomial {
        assert!(shift + self.nvars <= nvars, "embedding does not fit");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; nvars];
                e[shift..shift + self.nvars].copy_from_slice(&m.0);
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial { nvars, terms }
    }

    /// Drops the first `count` variables, which must not occur.
    pub fn drop_leading_vars(&self, count: usize) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[..count].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(Monomial(m.0[count..].to_vec()), c.clone());
        }
        Some(Polynomial {
            nvars: self.nvars - count,
            terms,
        })
    }

    pub fn involves_any(&self, vars: std::ops::Range<usize>) -> bool {
        self.terms
            .keys()
            .any(|m| m.0[vars.clone()].iter().any(|&e| e > 0))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        Error::check_vars(self.nvars, divisor.nvars)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ord = MonomialOrdering::degrevlex(self.nvars);
        let (dm, dc) = divisor.leading_term(&ord)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term(&ord)?;
            let Some(qm) = rm.checked_div(&dm) else {
                return Ok(None);
            };
            let qc = rc / &dc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    pub fn leading_term(&self, ord: &MonomialOrdering) -> Result<(Monomial, Rational)> {
        ord.leading_term(self)
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrdering) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// degrevlex-leading coefficient. Zero maps to zero.
    pub fn integer_normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let ord = MonomialOrdering::degrevlex(self.nvars);
        let (_, lc) = self.leading_term(&ord).expect("nonzero");
        let mut factor = Rational::new(den_lcm, num_gcd);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Renders with the given variable names, terms in descending degrevlex order.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let ord = MonomialOrdering::degrevlex(self.nvars);
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(&ord).into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[i].as_ref(), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Canonical rendering of the ideal generator spanned by `self`.
    pub fn render_canonical<S: AsRef<str>>(&self, names: &[S]) -> String {
        self.integer_normalized().render(names)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(3, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(3, 1)
    }
    fn z() -> Polynomial {
        Polynomial::var(3, 2)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(3, rat(n))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), &c(2) * &x());
        assert_eq!(&(&x() - &z()) * &(&x() + &z()), &(&x() * &x()) - &(&z() * &z()));
        let h = &(&x() * &z().pow(2)) - &y().pow(2);
        assert!((&h - &h).is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Polynomial::var(2, 0);
        assert_eq!(
            a.try_add(&x()),
            Err(Error::VariableMismatch { left: 2, right: 3 })
        );
        assert!(a.try_mul(&x()).is_err());
    }

    #[test]
    fn derivative_examples() {
        let h = &(&x() * &z().pow(2)) - &y().pow(2);
        assert_eq!(h.partial_derivative(1).unwrap(), &c(-2) * &y());
        let l = &x() + &(&c(2) * &z());
        assert_eq!(l.partial_derivative(0).unwrap(), c(1));
        let f = &y().pow(2) - &(&x() - &z()).pow(2);
        assert_eq!(f.partial_derivative(2).unwrap(), &c(2) * &(&x() - &z()));
        assert_eq!(
            f.partial_derivative(3),
            Err(Error::VarIndexOutOfRange { index: 3, nvars: 3 })
        );
    }

    #[test]
    fn evaluate_and_substitute() {
        let l = &x() + &(&c(2) * &z());
        assert_eq!(l.evaluate(&[rat(1), rat(0), rat(2)]).unwrap(), rat(5));
        assert!(l.evaluate(&[rat(1)]).is_err());

        // cusp y^2 - x^3 under x = t^2, y = t^3; t is the third variable
        let t = z();
        let cusp = &y().pow(2) - &x().pow(3);
        let p = cusp
            .substitute(0, &t.pow(2))
            .unwrap()
            .substitute(1, &t.pow(3))
            .unwrap();
        assert!(p.is_zero());

        let h = &(&x() * &z().pow(2)) - &y().pow(2);
        assert_eq!(h.substitute(0, &c(0)).unwrap(), -&y().pow(2));
    }

    #[test]
    fn exact_division() {
        let a = &(&x() - &z()) * &(&y() + &c(3));
        assert_eq!(a.div_exact(&(&x() - &z())).unwrap(), Some(&y() + &c(3)));
        assert_eq!(a.div_exact(&x()).unwrap(), None);
        assert_eq!(a.div_exact(&c(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rendering_is_canonical() {
        let names = ["x", "y", "z"];
        let h = &(&x() * &z().pow(2)) - &y().pow(2);
        assert_eq!(h.render(&names), "x*z^2 - y^2");
        let half = Polynomial::constant(3, ratio(-1, 2));
        assert_eq!((&half * &h).render(&names), "-1/2*x*z^2 + 1/2*y^2");
        assert_eq!((&half * &h).render_canonical(&names), "x*z^2 - y^2");
        assert_eq!(c(0).render(&names), "0");
        assert_eq!(c(-3).render(&names), "-3");
    }

    #[test]
    fn monomial_helpers() {
        let a = Monomial::new(vec![2, 0, 1]);
        let b = Monomial::new(vec![1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::new(vec![2, 3, 1]));
        assert!(!a.is_coprime(&b));
        assert_eq!(Monomial::new(vec![0, 4, 0]).pure_power(), Some((1, 4)));
        assert_eq!(a.pure_power(), None);
        assert_eq!(a.checked_div(&Monomial::new(vec![1, 0, 1])), Some(Monomial::new(vec![1, 0, 0])));
    }
}
