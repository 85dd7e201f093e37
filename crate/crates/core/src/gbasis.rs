//! Standard bases: Buchberger completion for global orders, homogenization
//! for local degree orders, and Mora's tangent-cone completion for mixed
//! block orders. Normal forms for non-global orders use Mora's weak normal
//! form.
//!
//! Internally polynomials are kept as term vectors sorted from largest to
//! smallest monomial under the active ordering, so the leading term is the
//! first entry and reduction steps are linear merges.
//!
//! Pairs are pruned with the product criterion and the Gebauer-Möller chain
//! criterion, and selected by the normal strategy (smallest lcm degree first,
//! ties broken by the ordering and then by insertion index), so every run on
//! the same input performs the same sequence of reductions.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::order::{BaseOrder, MonomialOrdering, OrderKind};
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SortedPoly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl SortedPoly {
    pub(crate) fn from_poly(p: &Polynomial, ord: &MonomialOrdering) -> Self {
        let terms = p
            .sorted_terms(ord)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SortedPoly {
            nvars: p.nvars(),
            terms,
        }
    }

    pub(crate) fn to_poly(&self) -> Polynomial {
        Polynomial::from_terms(self.nvars, self.terms.iter().cloned()).expect("consistent arity")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn ecart(&self) -> u32 {
        let top = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        top - self.lm().degree()
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = Rational::one() / self.lc();
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - c * m * other`
    fn sub_scaled(
        &self,
        c: &Rational,
        m: &Monomial,
        other: &SortedPoly,
        ord: &MonomialOrdering,
    ) -> SortedPoly {
        let shifted: Vec<(Monomial, Rational)> = other
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a * c))
            .collect();
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + shifted.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < shifted.len() {
            match ord.cmp(&a[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].1 - &shifted[j].1;
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(shifted[j..].iter().map(|(t, v)| (t.clone(), -v.clone())));
        SortedPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Cancels the leading term of `self` against `reducer`.
    fn reduce_lead_by(&self, reducer: &SortedPoly, ord: &MonomialOrdering) -> SortedPoly {
        let m = self
            .lm()
            .checked_div(reducer.lm())
            .expect("reducer divides leading monomial");
        let c = self.lc() / reducer.lc();
        self.sub_scaled(&c, &m, reducer, ord)
    }
}

fn s_poly_sorted(f: &SortedPoly, g: &SortedPoly, ord: &MonomialOrdering) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.checked_div(f.lm()).expect("lcm");
    let mg = l.checked_div(g.lm()).expect("lcm");
    let zero = SortedPoly {
        nvars: f.nvars,
        terms: Vec::new(),
    };
    let a = zero.sub_scaled(&(-Rational::one() / f.lc()), &mf, f, ord);
    a.sub_scaled(&(Rational::one() / g.lc()), &mg, g, ord)
}

/// Top-reduction: stops as soon as the leading monomial is irreducible.
fn top_reduce(
    mut h: SortedPoly,
    reducers: &[&SortedPoly],
    ord: &MonomialOrdering,
    monic: bool,
) -> SortedPoly {
    while !h.is_zero() {
        let Some(g) = reducers.iter().find(|g| g.lm().divides(h.lm())) else {
            break;
        };
        h = h.reduce_lead_by(g, ord);
        if monic {
            h.make_monic();
        }
    }
    h
}

/// Full division remainder (global orders).
fn full_reduce(
    mut h: SortedPoly,
    reducers: &[&SortedPoly],
    ord: &MonomialOrdering,
    monic: bool,
) -> SortedPoly {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while !h.is_zero() {
        match reducers.iter().find(|g| g.lm().divides(h.lm())) {
            Some(g) => {
                h = h.reduce_lead_by(g, ord);
                if monic && !h.is_zero() {
                    // keep the already-emitted remainder consistent with the rescaling
                    let inv = Rational::one() / h.lc();
                    for (_, c) in &mut rem {
                        *c *= &inv;
                    }
                    h.make_monic();
                }
            }
            None => {
                rem.push(h.terms.remove(0));
            }
        }
    }
    SortedPoly {
        nvars: h.nvars,
        terms: rem,
    }
}

/// Mora's weak normal form: ecart-minimal reducer selection, and the current
/// remainder joins the reducer set whenever the chosen reducer has larger
/// ecart.
fn mora_reduce(
    mut h: SortedPoly,
    reducers: &[&SortedPoly],
    ord: &MonomialOrdering,
    monic: bool,
) -> SortedPoly {
    let ecarts: Vec<u32> = reducers.iter().map(|g| g.ecart()).collect();
    let mut extra: Vec<(SortedPoly, u32)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let mut best: Option<(&SortedPoly, u32)> = None;
        let candidates = reducers
            .iter()
            .copied()
            .zip(ecarts.iter().copied())
            .chain(extra.iter().map(|(p, e)| (p, *e)));
        for (g, e) in candidates {
            if g.lm().divides(&lm) && best.map_or(true, |(_, be)| e < be) {
                best = Some((g, e));
            }
        }
        let Some((g, eg)) = best else {
            break;
        };
        let eh = h.ecart();
        let mut next = h.reduce_lead_by(g, ord);
        if monic {
            next.make_monic();
        }
        if eg > eh {
            extra.push((h, eh));
        }
        h = next;
    }
    h
}

/// A standard basis together with the ordering it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    generators: Vec<Polynomial>,
    ordering: MonomialOrdering,
    reduced: bool,
}

impl StandardBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.ordering.nvars()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| self.ordering.leading_monomial(g).expect("nonzero generator"))
            .collect()
    }

    /// True if some generator is a unit for the ordering (leading monomial 1).
    pub fn contains_unit(&self) -> bool {
        self.leading_monomials().iter().any(Monomial::is_one)
    }

    /// Normal form with respect to this basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        normal_form(p, &self.generators, &self.ordering)
    }

    fn sorted(&self) -> Vec<SortedPoly> {
        self.generators
            .iter()
            .map(|g| SortedPoly::from_poly(g, &self.ordering))
            .collect()
    }
}

fn check_arity(gens: &[Polynomial], ord: &MonomialOrdering) -> Result<()> {
    gens.iter()
        .try_for_each(|g| Error::check_vars(ord.nvars(), g.nvars()))
}

/// Division remainder for global orders; Mora weak normal form otherwise.
///
/// The result is exact (no rescaling) in the global case. In the local case
/// it is determined up to multiplication by a unit of the local ring.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &MonomialOrdering) -> Result<Polynomial> {
    Error::check_vars(ord.nvars(), p.nvars())?;
    check_arity(basis, ord)?;
    let sorted: Vec<SortedPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, ord))
        .collect();
    let refs: Vec<&SortedPoly> = sorted.iter().collect();
    let h = SortedPoly::from_poly(p, ord);
    let r = if ord.is_global() {
        full_reduce(h, &refs, ord, false)
    } else {
        mora_reduce(h, &refs, ord, false)
    };
    Ok(r.to_poly())
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrdering) -> Result<Polynomial> {
    Error::check_vars(ord.nvars(), f.nvars())?;
    Error::check_vars(ord.nvars(), g.nvars())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fs = SortedPoly::from_poly(f, ord);
    let gs = SortedPoly::from_poly(g, ord);
    Ok(s_poly_sorted(&fs, &gs, ord).to_poly())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Completion<'a> {
    ord: &'a MonomialOrdering,
    polys: Vec<SortedPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

enum Insert {
    Added,
    Unit,
}

impl<'a> Completion<'a> {
    fn insert(&mut self, h: SortedPoly) -> Insert {
        if h.lm().is_one() {
            return Insert::Unit;
        }
        let idx = self.polys.len();
        self.polys.push(h);
        self.update(idx);
        Insert::Added
    }

    // Gebauer-Möller installation of the new element `h`.
    fn update(&mut self, h: usize) {
        let h_lm = self.polys[h].lm().clone();
        let candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, h_lm.lcm(self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in candidates.iter().enumerate() {
            let coprime = h_lm.is_coprime(self.polys[*g].lm());
            let dominated = candidates[k + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(h_lm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&h_lm) != p.lcm
                && h_lm.lcm(polys[p.j].lm()) != p.lcm)
        });
        for (g, l) in kept {
            if !h_lm.is_coprime(self.polys[g].lm()) {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        self.active
            .retain(|&g| !h_lm.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.remove(best))
    }

    fn reduce(&self, s: SortedPoly) -> SortedPoly {
        if self.ord.is_global() || matches!(self.ord.kind(), OrderKind::Homogenized(_)) {
            let refs: Vec<&SortedPoly> = self.active.iter().map(|&i| &self.polys[i]).collect();
            top_reduce(s, &refs, self.ord, true)
        } else {
            let refs: Vec<&SortedPoly> = self.polys.iter().collect();
            mora_reduce(s, &refs, self.ord, true)
        }
    }
}

fn unit_basis(nvars: usize, ord: &MonomialOrdering) -> Vec<SortedPoly> {
    vec![SortedPoly::from_poly(&Polynomial::one(nvars), ord)]
}

/// Runs pair completion; the output is a minimal standard basis (leading
/// monomials pairwise non-divisible, monic), not tail-reduced.
fn complete(gens: &[Polynomial], ord: &MonomialOrdering) -> Vec<SortedPoly> {
    if ord.is_local() {
        complete_local(gens, ord)
    } else {
        complete_pairs(gens, ord)
    }
}

fn homogenize(p: &Polynomial) -> Polynomial {
    let d = p.total_degree().unwrap_or(0);
    let terms = p.terms().map(|(m, c)| {
        let mut e = Vec::with_capacity(m.nvars() + 1);
        e.push(d - m.degree());
        e.extend_from_slice(m.exponents());
        (Monomial::new(e), c.clone())
    });
    Polynomial::from_terms(p.nvars() + 1, terms).expect("arity")
}

fn dehomogenize(p: &Polynomial) -> Polynomial {
    let terms = p
        .terms()
        .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone()));
    Polynomial::from_terms(p.nvars() - 1, terms).expect("arity")
}

/// Local standard bases by homogenization (Lazard's method): a homogeneous
/// Gröbner basis of the generators' homogenizations, under degree first and
/// then the local order on the original variables, dehomogenizes to a
/// standard basis. Homogeneity bounds every reduction chain to a single
/// degree, avoiding the degree growth of tangent-cone reduction on ideals of
/// positive dimension.
fn complete_local(gens: &[Polynomial], ord: &MonomialOrdering) -> Vec<SortedPoly> {
    let n = ord.nvars();
    let lifted: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(homogenize).collect();
    let hom = MonomialOrdering::homogenized(n + 1, BaseOrder::NegDegRevLex);
    let mut polys = Vec::new();
    for p in complete_pairs(&lifted, &hom) {
        let q = SortedPoly::from_poly(&dehomogenize(&p.to_poly()), ord);
        if q.lm().is_one() {
            return unit_basis(n, ord);
        }
        polys.push(q);
    }
    minimalize(polys)
}

fn complete_pairs(gens: &[Polynomial], ord: &MonomialOrdering) -> Vec<SortedPoly> {
    let mut run = Completion {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = SortedPoly::from_poly(g, ord);
        s.make_monic();
        if let Insert::Unit = run.insert(s) {
            return unit_basis(ord.nvars(), ord);
        }
    }
    while let Some(pair) = run.next_pair() {
        let s = s_poly_sorted(&run.polys[pair.i], &run.polys[pair.j], ord);
        let mut h = run.reduce(s);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if let Insert::Unit = run.insert(h) {
            return unit_basis(ord.nvars(), ord);
        }
    }
    let out: Vec<SortedPoly> = run.active.iter().map(|&i| run.polys[i].clone()).collect();
    minimalize(out)
}

fn minimalize(mut polys: Vec<SortedPoly>) -> Vec<SortedPoly> {
    let mut keep: Vec<SortedPoly> = Vec::new();
    // stable under ties: of two equal leading monomials the earlier one survives
    while !polys.is_empty() {
        let p = polys.remove(0);
        let redundant = keep.iter().any(|k| k.lm().divides(p.lm()))
            || polys.iter().any(|q| q.lm().divides(p.lm()) && q.lm() != p.lm());
        if !redundant {
            keep.push(p);
        }
    }
    for p in &mut keep {
        p.make_monic();
    }
    keep
}

fn to_basis(
    mut polys: Vec<SortedPoly>,
    ord: &MonomialOrdering,
    reduced: bool,
) -> StandardBasis {
    polys.sort_by(|a, b| ord.cmp(b.lm(), a.lm()));
    StandardBasis {
        generators: polys.iter().map(SortedPoly::to_poly).collect(),
        ordering: *ord,
        reduced,
    }
}

/// Standard basis without the final tail reduction.
pub fn minimal_std_basis(gens: &[Polynomial], ord: &MonomialOrdering) -> Result<StandardBasis> {
    check_arity(gens, ord)?;
    Ok(to_basis(complete(gens, ord), ord, false))
}

/// Standard basis of the ideal generated by `gens`, reduced whenever a
/// canonical reduced form exists (always for global orders, for local orders
/// when the ideal has finite colength at the origin).
pub fn std_basis(gens: &[Polynomial], ord: &MonomialOrdering) -> Result<StandardBasis> {
    let b = minimal_std_basis(gens, ord)?;
    Ok(reduce_basis(&b))
}

/// Canonical reduced basis. For global orders this is the reduced Gröbner
/// basis. For local orders the reduced form is computed inside the finite
/// truncation `R / m^D` beyond the highest corner; when the ideal does not
/// have finite colength no finite reduced form exists and the minimal basis
/// is returned with `is_reduced() == false`.
///
/// The input generators are completed first, so any generating set is
/// accepted.
pub fn reduce_basis(b: &StandardBasis) -> StandardBasis {
    let ord = b.ordering;
    let polys = complete(&b.generators, &ord);
    if polys.iter().any(|p| p.lm().is_one()) {
        return to_basis(unit_basis(ord.nvars(), &ord), &ord, true);
    }
    if ord.is_global() {
        let mut out = Vec::with_capacity(polys.len());
        for (i, p) in polys.iter().enumerate() {
            let others: Vec<&SortedPoly> = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            let mut r = full_reduce(p.clone(), &others, &ord, false);
            r.make_monic();
            out.push(r);
        }
        return to_basis(out, &ord, true);
    }
    match local_reduced(&polys, &ord) {
        Some(out) => to_basis(out, &ord, true),
        None => to_basis(polys, &ord, false),
    }
}

/// Exponent bounds `a_i` with `x_i^{a_i}` a leading monomial, if every
/// variable has a pure power among the leading monomials.
pub(crate) fn pure_power_bounds(lms: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut bounds: Vec<Option<u32>> = vec![None; nvars];
    for m in lms {
        if let Some((i, e)) = m.pure_power() {
            bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
        }
    }
    bounds.into_iter().collect()
}

/// All exponent vectors in the box `0 <= e_i < bounds_i`.
pub(crate) fn box_monomials(bounds: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * b as usize);
        for prefix in &out {
            for e in 0..b {
                let mut v: Vec<u32> = prefix.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Monomials of total degree below `bound` in `nvars` variables.
pub(crate) fn monomials_below_degree(nvars: usize, bound: u32) -> Vec<Monomial> {
    if bound == 0 {
        return Vec::new();
    }
    box_monomials(&vec![bound; nvars])
        .into_iter()
        .filter(|m| m.degree() < bound)
        .collect()
}

fn local_reduced(polys: &[SortedPoly], ord: &MonomialOrdering) -> Option<Vec<SortedPoly>> {
    let nvars = ord.nvars();
    let lms: Vec<Monomial> = polys.iter().map(|p| p.lm().clone()).collect();
    let bounds = pure_power_bounds(&lms, nvars)?;
    let standard: Vec<Monomial> = box_monomials(&bounds)
        .into_iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .collect();
    // every monomial of degree >= cutoff lies in the ideal of the local ring
    let cutoff = standard
        .iter()
        .chain(&lms)
        .map(Monomial::degree)
        .max()
        .unwrap_or(0)
        + 1;
    let mut columns = monomials_below_degree(nvars, cutoff);
    columns.sort_by(|a, b| ord.cmp(b, a));
    let index: std::collections::HashMap<&Monomial, usize> =
        columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in polys {
        let room = cutoff - p.lm().degree();
        for shift in monomials_below_degree(nvars, room) {
            let mut row = vec![Rational::zero(); columns.len()];
            for (m, c) in &p.terms {
                let t = m.mul(&shift);
                if let Some(&col) = index.get(&t) {
                    row[col] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    let ech = linalg::row_reduce(rows, columns.len());
    let mut out = Vec::with_capacity(polys.len());
    for lm in &lms {
        let col = index[lm];
        let r = ech.pivots.iter().position(|&p| p == col)?;
        let terms: Vec<(Monomial, Rational)> = ech.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (columns[i].clone(), c.clone()))
            .collect();
        out.push(SortedPoly { nvars, terms });
    }
    Some(out)
}

/// Post-hoc Buchberger criterion: every S-polynomial of every pair of
/// generators has normal form zero. Uses no pair criteria.
pub fn satisfies_buchberger_criterion(b: &StandardBasis) -> bool {
    let ord = b.ordering;
    let sorted = b.sorted();
    let refs: Vec<&SortedPoly> = sorted.iter().collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let s = s_poly_sorted(&sorted[i], &sorted[j], &ord);
            let r = if ord.is_global() {
                full_reduce(s, &refs, &ord, true)
            } else {
                mora_reduce(s, &refs, &ord, true)
            };
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, i)).collect()
    }

    #[test]
    fn normal_form_examples() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let g = MonomialOrdering::degrevlex(2);
        let l = MonomialOrdering::local(2);
        assert!(normal_form(&x.pow(2), &[x.clone()], &g).unwrap().is_zero());
        assert!(normal_form(&(x - &x.pow(2)), &[x.clone()], &l).unwrap().is_zero());
        assert_eq!(normal_form(y, &[x.clone()], &g).unwrap(), y.clone());
    }

    #[test]
    fn linear_span_and_principal() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let g = MonomialOrdering::degrevlex(2);
        let b = std_basis(&[x + y, x - y], &g).unwrap();
        assert_eq!(b.generators(), &[x.clone(), y.clone()]);
        assert!(b.is_reduced());
        for ord in [g, MonomialOrdering::local(2)] {
            let b = std_basis(&[x.clone()], &ord).unwrap();
            assert_eq!(b.generators(), &[x.clone()]);
        }
    }

    #[test]
    fn reduce_examples() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let g = MonomialOrdering::degrevlex(2);
        let raw = StandardBasis {
            generators: vec![x.clone(), x + y],
            ordering: g,
            reduced: false,
        };
        assert_eq!(reduce_basis(&raw).generators(), &[x.clone(), y.clone()]);
        let raw = StandardBasis {
            generators: vec![x.scale(&rat(2))],
            ordering: g,
            reduced: false,
        };
        assert_eq!(reduce_basis(&raw).generators(), &[x.clone()]);
    }

    #[test]
    fn local_versus_global_on_unit_multiple() {
        let x = Polynomial::var(1, 0);
        let p = &x - &x.pow(2);
        let global = std_basis(&[p.clone()], &MonomialOrdering::degrevlex(1)).unwrap();
        assert_eq!(global.generators(), &[p.scale(&rat(-1))]);
        let local = std_basis(&[p], &MonomialOrdering::local(1)).unwrap();
        assert_eq!(local.generators(), &[x]);
        assert!(local.is_reduced());
    }

    #[test]
    fn unit_ideal_collapses() {
        let v = vars(2);
        let one = Polynomial::one(2);
        let b = std_basis(&[&v[0] - &one, v[0].clone()], &MonomialOrdering::degrevlex(2)).unwrap();
        assert_eq!(b.generators(), &[one.clone()]);
        let b = std_basis(&[&v[0] - &one], &MonomialOrdering::local(2)).unwrap();
        assert!(b.contains_unit());
    }

    #[test]
    fn twisted_cubic_elimination() {
        // variables t, y, z with y = t^2, z = t^3
        let v = vars(3);
        let (t, y, z) = (&v[0], &v[1], &v[2]);
        let ord = MonomialOrdering::elimination(3, 1);
        let b = std_basis(&[y - &t.pow(2), z - &t.pow(3)], &ord).unwrap();
        assert!(satisfies_buchberger_criterion(&b));
        let free: Vec<&Polynomial> = b
            .generators()
            .iter()
            .filter(|g| !g.involves_any(0..1))
            .collect();
        assert_eq!(free.len(), 1);
        let expected = &y.pow(3) - &z.pow(2);
        assert!(free[0].div_exact(&expected).unwrap().map_or(false, |q| q.is_constant()));
    }

    #[test]
    fn mora_completion_matches_criterion() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let ord = MonomialOrdering::local(2);
        let gens = [&x.pow(2) + &y.pow(3), &(x * y) + &x.pow(3)];
        let b = minimal_std_basis(&gens, &ord).unwrap();
        assert!(satisfies_buchberger_criterion(&b));
        for g in &gens {
            assert!(b.normal_form(g).unwrap().is_zero());
        }
    }
}
