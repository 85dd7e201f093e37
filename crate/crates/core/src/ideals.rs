//! Ideal-level operations built on standard bases.
//!
//! Global operations (equality, quotients, saturation, elimination) use
//! degrevlex or block orders. The local invariants at the origin, Krull
//! dimension and colength, come from a Mora standard basis under the
//! negative-degree order: its leading ideal has the same Hilbert-Samuel data
//! as the localized ideal.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gbasis::{self, StandardBasis};
use crate::order::MonomialOrdering;
use crate::poly::{Monomial, Polynomial};

/// Ideal given by generators, with a write-once cache of standard bases per
/// ordering. Concurrent readers may race to fill an entry; whichever basis
/// lands first is kept, and both are bases of this ideal.
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    cache: RwLock<HashMap<MonomialOrdering, Arc<StandardBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("nvars", &self.nvars)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            Error::check_vars(nvars, g.nvars())?;
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal::new(nvars, Vec::new()).expect("no generators")
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal::new(nvars, vec![Polynomial::one(nvars)]).expect("arity")
    }

    /// The maximal ideal of the origin, generated by all variables.
    pub fn maximal(nvars: usize) -> Self {
        let gens = (0..nvars).map(|i| Polynomial::var(nvars, i)).collect();
        Ideal::new(nvars, gens).expect("arity")
    }

    pub fn principal(p: Polynomial) -> Self {
        Ideal::new(p.nvars(), vec![p]).expect("arity")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Standard basis for `ord`, computed on first use. Global orders yield
    /// the reduced Gröbner basis; other orders a minimal standard basis.
    pub fn basis(&self, ord: &MonomialOrdering) -> Result<Arc<StandardBasis>> {
        Error::check_vars(self.nvars, ord.nvars())?;
        if let Some(b) = self.cache.read().expect("cache lock").get(ord) {
            return Ok(Arc::clone(b));
        }
        let b = if ord.is_global() {
            gbasis::std_basis(&self.generators, ord)?
        } else {
            gbasis::minimal_std_basis(&self.generators, ord)?
        };
        let mut cache = self.cache.write().expect("cache lock");
        Ok(Arc::clone(
            cache.entry(*ord).or_insert_with(|| Arc::new(b)),
        ))
    }

    pub fn groebner(&self) -> Result<Arc<StandardBasis>> {
        self.basis(&MonomialOrdering::degrevlex(self.nvars))
    }

    pub fn local_basis(&self) -> Result<Arc<StandardBasis>> {
        self.basis(&MonomialOrdering::local(self.nvars))
    }

    /// Global ideal membership.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.groebner()?.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        Error::check_vars(self.nvars, other.nvars)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.contains_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ideal_sum(self, other)
    }

    pub fn with_generator(&self, p: Polynomial) -> Result<Ideal> {
        Error::check_vars(self.nvars, p.nvars())?;
        let mut gens = self.generators.clone();
        gens.push(p);
        Ideal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        Error::check_vars(self.nvars, other.nvars)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = a * b;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(self.nvars, gens)
    }

    /// Embeds into a ring with `extra` new variables in front.
    fn prepend_vars(&self, extra: usize) -> Ideal {
        let n = self.nvars + extra;
        let gens = self.generators.iter().map(|g| g.embed(n, extra)).collect();
        Ideal::new(n, gens).expect("arity")
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        ideal_equal(self, other).unwrap_or(false)
    }
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    Error::check_vars(a.nvars, b.nvars)?;
    let mut gens = a.generators.clone();
    gens.extend(b.generators.iter().cloned());
    Ideal::new(a.nvars, gens)
}

/// Equality of ideals via their reduced degrevlex bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    Error::check_vars(a.nvars, b.nvars)?;
    Ok(a.groebner()?.generators() == b.groebner()?.generators())
}

/// `I ∩ J`, eliminating an auxiliary variable `t` from `t·I + (1-t)·J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    Error::check_vars(a.nvars, b.nvars)?;
    let n = a.nvars + 1;
    let t = Polynomial::var(n, 0);
    let one_minus_t = &Polynomial::one(n) - &t;
    let mut gens = Vec::new();
    for g in a.prepend_vars(1).generators {
        gens.push(&t * &g);
    }
    for g in b.prepend_vars(1).generators {
        gens.push(&one_minus_t * &g);
    }
    eliminate(&Ideal::new(n, gens)?, 1)
}

/// `(I : g) = { p : p·g ∈ I }`.
pub fn quotient(ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    Error::check_vars(ideal.nvars, g.nvars())?;
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let meet = intersect(ideal, &Ideal::principal(g.clone()))?;
    let mut gens = Vec::with_capacity(meet.generators.len());
    for h in meet.generators() {
        let q = h
            .div_exact(g)?
            .expect("generators of I ∩ (g) are multiples of g");
        gens.push(q);
    }
    Ideal::new(ideal.nvars, gens)
}

/// `(I : J) = ∩ (I : g)` over the generators `g` of `J`.
pub fn quotient_ideal(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    Error::check_vars(ideal.nvars, by.nvars)?;
    let mut acc: Option<Ideal> = None;
    for g in by.generators() {
        let q = quotient(ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.nvars)))
}

/// `(I : J^∞) = ∩ (I : g^∞)` over the generators `g` of `J`.
pub fn saturate(ideal: &Ideal, by: &Ideal) -> Result<Ideal> {
    Error::check_vars(ideal.nvars, by.nvars)?;
    if by.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut acc: Option<Ideal> = None;
    for g in by.generators() {
        let s = saturate_by(ideal, g)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    Ok(acc.expect("nonzero ideal has a generator"))
}

/// `I : g^∞ = (I + (1 - t·g)) ∩ k[x]`, one elimination instead of a chain of
/// quotients.
fn saturate_by(ideal: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if ideal.is_unit()? {
        return Ok(ideal.clone());
    }
    let n = ideal.nvars + 1;
    let t = Polynomial::var(n, 0);
    let mut gens = ideal.prepend_vars(1).generators;
    gens.push(&Polynomial::one(n) - &(&t * &g.embed(n, 1)));
    eliminate(&Ideal::new(n, gens)?, 1)
}

/// `I ∩ k[x_{count}, ..]`, as an ideal in the remaining variables.
pub fn eliminate(ideal: &Ideal, count: usize) -> Result<Ideal> {
    if count == 0 || count >= ideal.nvars {
        return Err(Error::EliminationRange {
            count,
            nvars: ideal.nvars,
        });
    }
    let ord = MonomialOrdering::elimination(ideal.nvars, count);
    let basis = ideal.basis(&ord)?;
    let gens = basis
        .generators()
        .iter()
        .filter_map(|g| g.drop_leading_vars(count))
        .collect();
    Ideal::new(ideal.nvars - count, gens)
}

/// Krull dimension of the germ at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalDimension {
    /// The ideal contains a unit of the local ring: the germ is empty.
    EmptyAtOrigin,
    Dim(usize),
}

impl fmt::Display for LocalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDimension::EmptyAtOrigin => f.write_str("empty_at_origin"),
            LocalDimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Dimension of a monomial ideal: the size of the largest variable set `S`
/// such that no generator is supported on `S` alone.
pub fn monomial_ideal_dimension(lms: &[Monomial], nvars: usize) -> usize {
    assert!(nvars < usize::BITS as usize);
    let mut best = 0;
    for mask in 0usize..(1 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let avoids = lms.iter().all(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
        });
        if avoids {
            best = size;
        }
    }
    best
}

pub fn local_dimension(ideal: &Ideal) -> Result<LocalDimension> {
    let b = ideal.local_basis()?;
    if b.contains_unit() {
        return Ok(LocalDimension::EmptyAtOrigin);
    }
    Ok(LocalDimension::Dim(monomial_ideal_dimension(
        &b.leading_monomials(),
        ideal.nvars,
    )))
}

/// Colength of an ideal in the local ring at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u64(*n),
            Multiplicity::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Multiplicity::Finite(n)),
            Raw::Text(t) if t == "infinite" => Ok(Multiplicity::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a count or \"infinite\", got {t:?}"
            ))),
        }
    }
}

/// `dim_Q  Q[x]_(x) / I`, counted as the standard monomials of a local
/// standard basis.
pub fn local_multiplicity(ideal: &Ideal) -> Result<Multiplicity> {
    let b = ideal.local_basis()?;
    if b.contains_unit() {
        return Ok(Multiplicity::Finite(0));
    }
    let lms = b.leading_monomials();
    let Some(bounds) = gbasis::pure_power_bounds(&lms, ideal.nvars) else {
        return Ok(Multiplicity::Infinite);
    };
    let count = gbasis::box_monomials(&bounds)
        .iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .count();
    Ok(Multiplicity::Finite(count as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, i)).collect()
    }

    fn ideal(gens: Vec<Polynomial>) -> Ideal {
        let n = gens[0].nvars();
        Ideal::new(n, gens).unwrap()
    }

    #[test]
    fn sum_and_equality() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let s = ideal_sum(&ideal(vec![x.clone()]), &ideal(vec![y.clone()])).unwrap();
        assert_eq!(s.generators(), &[x.clone(), y.clone()]);
        assert!(ideal_equal(&ideal(vec![x + y, x - y]), &ideal(vec![x.clone(), y.clone()])).unwrap());
        assert!(!ideal_equal(&ideal(vec![x.clone()]), &ideal(vec![x.pow(2)])).unwrap());
        assert!(ideal_sum(&ideal(vec![x.clone()]), &Ideal::maximal(3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let q = quotient(&ideal(vec![x.pow(2)]), x).unwrap();
        assert_eq!(q, ideal(vec![x.clone()]));
        let q = quotient(&ideal(vec![x * y, x * z]), x).unwrap();
        assert_eq!(q, ideal(vec![y.clone(), z.clone()]));
        let q = quotient(&ideal(vec![x.clone()]), y).unwrap();
        assert_eq!(q, ideal(vec![x.clone()]));
        assert_eq!(
            quotient(&ideal(vec![x.clone()]), &Polynomial::zero(3)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn saturation_examples() {
        let v = vars(3);
        let (x, y) = (&v[0], &v[1]);
        let s = saturate(&ideal(vec![&x.pow(2) * y]), &ideal(vec![y.clone()])).unwrap();
        assert_eq!(s, ideal(vec![x.pow(2)]));
        let s = saturate(&ideal(vec![x.clone()]), &ideal(vec![y.clone()])).unwrap();
        assert_eq!(s, ideal(vec![x.clone()]));
    }

    #[test]
    fn saturation_strips_embedded_line() {
        // (xy, xz) = (x) ∩ (y, z); saturating by (y, z) leaves (x).
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let base = ideal(vec![x * y, x * z]);
        let s = saturate(&base, &ideal(vec![y.clone(), z.clone()])).unwrap();
        // brute-force side: x·y and x·z lie in the base ideal, so x is in the saturation
        assert!(base.contains(&(x * y)).unwrap() && base.contains(&(x * z)).unwrap());
        assert!(s.contains(x).unwrap());
        // and every saturated generator is a multiple of x
        for g in s.generators() {
            assert!(g.div_exact(x).unwrap().is_some());
        }
    }

    #[test]
    fn elimination_examples() {
        // variables t, x, y
        let v = vars(3);
        let (t, x, y) = (&v[0], &v[1], &v[2]);
        let e = eliminate(&ideal(vec![&t.pow(2) - x, &t.pow(3) - y]), 1).unwrap();
        let w = vars(2);
        assert_eq!(e, ideal(vec![&w[0].pow(3) - &w[1].pow(2)]));

        let v2 = vars(2);
        let e = eliminate(&ideal(vec![&v2[0] - &v2[1]]), 1).unwrap();
        assert!(e.is_zero());
        let e = eliminate(&ideal(vec![&(&v2[0] * &v2[1]) - &Polynomial::one(2)]), 1).unwrap();
        assert!(e.is_zero());
        assert!(eliminate(&ideal(vec![t.clone()]), 3).is_err());
    }

    #[test]
    fn local_dimension_examples() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let umbrella = &(x * &z.pow(2)) - &y.pow(2);
        assert_eq!(local_dimension(&ideal(vec![umbrella])).unwrap(), LocalDimension::Dim(2));
        assert_eq!(local_dimension(&ideal(vec![x.clone(), y.clone()])).unwrap(), LocalDimension::Dim(1));
        assert_eq!(local_dimension(&Ideal::maximal(3)).unwrap(), LocalDimension::Dim(0));
        assert_eq!(
            local_dimension(&ideal(vec![x - &Polynomial::one(3)])).unwrap(),
            LocalDimension::EmptyAtOrigin
        );
        assert_eq!(local_dimension(&Ideal::zero(3)).unwrap(), LocalDimension::Dim(3));
    }

    #[test]
    fn local_multiplicity_examples() {
        let v = vars(3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let c = |n| Polynomial::constant(3, rat(n));
        assert_eq!(
            local_multiplicity(&ideal(vec![y.clone(), z.clone(), -&x.pow(2)])).unwrap(),
            Multiplicity::Finite(2)
        );
        let f = &y.pow(2) - &(x - z).pow(2);
        let cusp_branch = ideal(vec![x - z, &y.pow(2) - &(x * &z.pow(2)), f]);
        assert_eq!(local_multiplicity(&cusp_branch).unwrap(), Multiplicity::Finite(6));
        let l = x + &(&c(2) * z);
        assert_eq!(
            local_multiplicity(&ideal(vec![x.clone(), y.clone(), l])).unwrap(),
            Multiplicity::Finite(1)
        );
        let w = vars(2);
        let sq = ideal(vec![w[0].pow(2), &w[0] * &w[1], w[1].pow(2)]);
        assert_eq!(local_multiplicity(&sq).unwrap(), Multiplicity::Finite(3));
        assert_eq!(local_multiplicity(&ideal(vec![x.clone()])).unwrap(), Multiplicity::Infinite);
        assert_eq!(
            local_multiplicity(&ideal(vec![x - &c(1)])).unwrap(),
            Multiplicity::Finite(0)
        );
    }

    #[test]
    fn multiplicity_serializes_as_count_or_tag() {
        let s = serde_json::to_string(&[Multiplicity::Finite(8), Multiplicity::Infinite]).unwrap();
        assert_eq!(s, "[8,\"infinite\"]");
        let back: Vec<Multiplicity> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![Multiplicity::Finite(8), Multiplicity::Infinite]);
        assert!(serde_json::from_str::<Multiplicity>("\"lots\"").is_err());
    }
}
