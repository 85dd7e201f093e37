#![allow(dead_code)]

use polar_morse::ideals::Ideal;
use polar_morse::poly::{rat, Monomial, Polynomial};
use polar_morse::polar::{StratifiedGerm, Stratum};
use proptest::prelude::*;

pub fn vars(n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| Polynomial::var(n, i)).collect()
}

pub fn c(n: usize, v: i64) -> Polynomial {
    Polynomial::constant(n, rat(v))
}

pub fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

pub fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

/// Sparse polynomial with small integer coefficients.
pub fn poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(n, max_exp), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(m, c)| (m, rat(c)))).unwrap()
    })
}

/// Nonzero polynomial vanishing at the origin.
pub fn poly_at_origin(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_exp, max_terms)
        .prop_map(move |p| &p - &Polynomial::constant(n, p.constant_term()))
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn umbrella() -> (StratifiedGerm, Polynomial, Polynomial) {
    let v = vars(3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let germ = StratifiedGerm::new(
        names(&["x", "y", "z"]),
        vec![
            Stratum::new("O", 0, Ideal::maximal(3)),
            Stratum::new("V", 1, Ideal::new(3, vec![y.clone(), z.clone()]).unwrap()),
            Stratum::new("W", 2, Ideal::principal(&(x * &z.pow(2)) - &y.pow(2))),
        ],
    )
    .unwrap();
    let f = &y.pow(2) - &(x - z).pow(2);
    let l = x + &(&c(3, 2) * z);
    (germ, f, l)
}

pub fn linear_form(coeffs: &[i64]) -> Polynomial {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(n), |acc, (i, &k)| &acc + &(&c(n, k) * &Polynomial::var(n, i)))
}
