//! Multivariate polynomials over ℚ in the Minkowski coordinates (t, x₁, …, x_{n−1}).
//!
//! Coordinate 0 is always time. Terms live in a `BTreeMap` keyed by graded-lex
//! monomials, so two polynomials are equal exactly when their term maps are.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::rational::{self, Rational};

pub type Exponents = SmallVec<[u16; 8]>;

/// Exponent vector, ordered by total degree and then lexicographically with
/// `t` as the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        let exps = Exponents::from_slice(exps);
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { degree, exps }
    }

    pub fn one(dim: usize) -> Self {
        Monomial::new(&vec![0; dim])
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[axis] = 1;
        Monomial::new(&exps)
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, axis: usize) -> u16 {
        self.exps[axis]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    /// Adds `delta` to one exponent. Panics if the result would be negative.
    pub fn shifted(&self, axis: usize, delta: i32) -> Monomial {
        let mut exps = self.exps.clone();
        let e = exps[axis] as i32 + delta;
        assert!(e >= 0, "negative exponent");
        exps[axis] = e as u16;
        Monomial { degree: (self.degree as i32 + delta) as u32, exps }
    }

    /// All monomials of total degree `degree` in `dim` variables, largest first.
    pub fn all_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
        fn rec(axis: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
            if axis + 1 == cur.len() {
                cur[axis] = left as u16;
                out.push(Monomial::new(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[axis] = e as u16;
                rec(axis + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        rec(0, degree, &mut Exponents::from_elem(0, dim), &mut out);
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.exps
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, &v)| v.powi(e as i32))
            .product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_terms(dim, [(Monomial::one(dim), c)])
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        Self::from_terms(dim, [(Monomial::var(dim, axis), Rational::one())])
    }

    /// `c · t^e₀ x₁^e₁ …`
    pub fn monomial(exps: &[u16], c: Rational) -> Self {
        Self::from_terms(exps.len(), [(Monomial::new(exps), c)])
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Minkowski square x·x = −t² + Σ xᵢ².
    pub fn minkowski_norm_sq(dim: usize) -> Self {
        let mut p = Polynomial::zero(dim);
        for axis in 0..dim {
            let c = if axis == 0 { -Rational::one() } else { Rational::one() };
            p.add_term(Monomial::var(dim, axis).shifted(axis, 1), c);
        }
        p
    }

    /// 1 + x·x, the inverse of ρ.
    pub fn one_plus_norm_sq(dim: usize) -> Self {
        let mut p = Self::minkowski_norm_sq(dim);
        p.add_term(Monomial::one(dim), Rational::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn partial(&self, axis: usize) -> Polynomial {
        assert!(axis < self.dim, "axis out of range");
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exponent(axis);
            if e > 0 {
                out.add_term(m.shifted(axis, -1), c * rational::int(e as i64));
            }
        }
        out
    }

    /// Euler operator H = Σ x^μ ∂_μ: each term is multiplied by its degree.
    pub fn euler(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * rational::int(m.degree() as i64));
        }
        out
    }

    /// −∂ₜₜ + Σ ∂ₓᵢₓᵢ.
    pub fn dalembertian(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            for axis in 0..self.dim {
                let e = m.exponent(axis) as i64;
                if e >= 2 {
                    let sign = if axis == 0 { -1 } else { 1 };
                    out.add_term(m.shifted(axis, -2), c * rational::int(sign * e * (e - 1)));
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(m, c)| rational::to_f64(c) * m.eval(x)).sum()
    }

    /// Highest power of `t` present.
    pub fn t_degree(&self) -> u16 {
        self.terms.keys().map(|m| m.exponent(0)).max().unwrap_or(0)
    }
}

/// Coordinate names: `t, x` in two dimensions, `t, x, y, z` up to four, `t, x1, …` beyond.
pub fn coordinate_name(dim: usize, axis: usize) -> String {
    match (dim, axis) {
        (_, 0) => "t".to_string(),
        (d, a) if d <= 4 => ["x", "y", "z"][a - 1].to_string(),
        (_, a) => format!("x{a}"),
    }
}

pub(crate) fn superscript(mut n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 0 {
        return "⁰".into();
    }
    let mut s = Vec::new();
    while n > 0 {
        s.push(DIGITS[(n % 10) as usize]);
        n /= 10;
    }
    s.iter().rev().collect()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (axis, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            write!(f, "{}", coordinate_name(m.dim(), axis))?;
            if e > 1 {
                write!(f, "{}", superscript(e as u32))?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let unit = m.degree() > 0 && a.is_one();
            if !unit {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            write_monomial(f, m)?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Polynomial::zero(self.dim);
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        out
    }
}
