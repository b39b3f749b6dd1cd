#![allow(dead_code)]

use proptest::prelude::*;
use singwave_core::poly::Monomial;
use singwave_core::rational::frac;
use singwave_core::ring::normalize;
use singwave_core::{Polynomial, Rational, RhoExpr};

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

pub fn arb_monomial(dim: usize, max_degree: u16) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_degree, dim).prop_map(move |mut e| {
        while e.iter().sum::<u16>() > max_degree {
            let i = (0..e.len()).max_by_key(|&i| e[i]).expect("nonempty");
            e[i] -= 1;
        }
        Monomial::new(&e)
    })
}

pub fn arb_polynomial(dim: usize, max_degree: u16, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_monomial(dim, max_degree), arb_rational()), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(dim, terms))
}

pub fn arb_homogeneous(dim: usize, degree: u32) -> impl Strategy<Value = Polynomial> {
    let monos = Monomial::all_of_degree(dim, degree);
    let n = monos.len();
    proptest::collection::vec(arb_rational(), n)
        .prop_map(move |cs| Polynomial::from_terms(dim, monos.iter().cloned().zip(cs)))
}

/// Normalized ring element with polynomial degree ≤ `max_degree` and ρ-power ≤ `max_rho`.
pub fn arb_rho_expr(dim: usize, max_degree: u16, max_rho: u32) -> impl Strategy<Value = RhoExpr> {
    proptest::collection::vec((0..=max_rho, arb_polynomial(dim, max_degree, 3)), 0..=3)
        .prop_map(move |layers| normalize(dim, layers).expect("dimensions agree"))
}

/// A point with 1 + x·x comfortably away from zero and moderate coordinates.
pub fn arb_regular_point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-0.9f64..0.9, dim).prop_filter("away from the singular set", |x| {
        let s: f64 = x.iter().enumerate().map(|(i, v)| if i == 0 { -v * v } else { v * v }).sum();
        (1.0 + s).abs() > 0.2
    })
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}
