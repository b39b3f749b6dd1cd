//! The quotient ring ℚ[t, x₁, …, x_{n−1}, ρ] / (ρ·(1 + x·x) − 1).
//!
//! An element is stored as Σₛ Pₛ ρˢ with polynomial coefficients. The normal form
//! requires every layer s ≥ 1 to have t-degree at most one; layer 0 is
//! unconstrained. It is reached by dividing each layer by 1 + x·x = 1 − t² + Σxᵢ²
//! with t² as head term and pushing the quotient one layer down, since
//! (1 + x·x)·ρˢ = ρˢ⁻¹. Normal forms are unique, so ring equality is structural
//! equality and every identity check reduces to `is_zero`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, Exponents, Monomial, Polynomial};
use crate::rational::{self, Rational};

/// A point (t, x₁, …) of Minkowski space with signature (−, +, …, +).
#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiPoint {
    pub coords: Vec<f64>,
}

impl MinkowskiPoint {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        MinkowskiPoint { coords: coords.into() }
    }

    pub fn origin(dim: usize) -> Self {
        MinkowskiPoint { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn minkowski_norm_sq(&self) -> f64 {
        minkowski_norm_sq(&self.coords)
    }
}

pub fn minkowski_norm_sq(x: &[f64]) -> f64 {
    x.iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { -v * v } else { v * v })
        .sum()
}

/// 1 + x·x, or `SingularPoint` if it vanishes to working precision.
pub(crate) fn one_plus_norm_checked(x: &[f64]) -> Result<f64> {
    let q = 1.0 + minkowski_norm_sq(x);
    let scale = 1.0 + x.iter().map(|v| v * v).sum::<f64>();
    if q.abs() <= 64.0 * f64::EPSILON * scale {
        return Err(Error::SingularPoint { value: q });
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RhoExpr {
    dim: usize,
    layers: BTreeMap<u32, Polynomial>,
}

/// Accumulates layers before normalization.
struct Raw {
    dim: usize,
    layers: BTreeMap<u32, Polynomial>,
}

impl Raw {
    fn new(dim: usize) -> Self {
        Raw { dim, layers: BTreeMap::new() }
    }

    fn add(&mut self, s: u32, m: Monomial, c: Rational) {
        let dim = self.dim;
        self.layers.entry(s).or_insert_with(|| Polynomial::zero(dim)).add_term(m, c);
    }

    fn finish(self) -> RhoExpr {
        RhoExpr { dim: self.dim, layers: reduce_layers(self.dim, self.layers) }
    }
}

fn reduce_layers(dim: usize, mut layers: BTreeMap<u32, Polynomial>) -> BTreeMap<u32, Polynomial> {
    let top = layers.keys().next_back().copied().unwrap_or(0);
    for s in (1..=top).rev() {
        let Some(p) = layers.remove(&s) else { continue };
        let td = p.t_degree() as usize;
        if td < 2 {
            if !p.is_zero() {
                layers.insert(s, p);
            }
            continue;
        }
        let mut buckets = vec![Polynomial::zero(dim); td + 1];
        for (m, c) in p.into_terms() {
            let e = m.exponent(0) as usize;
            buckets[e].add_term(m, c);
        }
        let mut quotient = Polynomial::zero(dim);
        // c·t^e·m·ρˢ = c·t^{e−2}·m·(1 + Σxᵢ²)·ρˢ − c·t^{e−2}·m·ρˢ⁻¹
        for e in (2..=td).rev() {
            let bucket = std::mem::replace(&mut buckets[e], Polynomial::zero(dim));
            for (m, c) in bucket.into_terms() {
                let lowered = m.shifted(0, -2);
                for axis in 1..dim {
                    buckets[e - 2].add_term(lowered.shifted(axis, 2), c.clone());
                }
                quotient.add_term(lowered.clone(), -c.clone());
                buckets[e - 2].add_term(lowered, c);
            }
        }
        let [low, high, ..] = &mut buckets[..] else { unreachable!() };
        let mut rem = std::mem::replace(low, Polynomial::zero(dim));
        rem.add_scaled(high, &Rational::one());
        if !rem.is_zero() {
            layers.insert(s, rem);
        }
        layers.entry(s - 1).or_insert_with(|| Polynomial::zero(dim)).add_scaled(&quotient, &Rational::one());
    }
    layers.retain(|_, p| !p.is_zero());
    layers
}

/// Canonical form of Σ Pₛ ρˢ given as `(s, Pₛ)` pairs; repeated powers are summed.
pub fn normalize(dim: usize, raw: impl IntoIterator<Item = (u32, Polynomial)>) -> Result<RhoExpr> {
    let mut layers: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (s, p) in raw {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
        }
        match layers.get_mut(&s) {
            Some(acc) => acc.add_scaled(&p, &Rational::one()),
            None => {
                layers.insert(s, p);
            }
        }
    }
    Ok(RhoExpr { dim, layers: reduce_layers(dim, layers) })
}

impl RhoExpr {
    pub fn zero(dim: usize) -> Self {
        RhoExpr { dim, layers: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::from_polynomial(Polynomial::one(dim))
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(dim, c))
    }

    /// ρ = 1/(1 + x·x)
    pub fn rho(dim: usize) -> Self {
        Self::rho_pow(dim, 1)
    }

    pub fn rho_pow(dim: usize, s: u32) -> Self {
        let mut layers = BTreeMap::new();
        layers.insert(s, Polynomial::one(dim));
        RhoExpr { dim, layers }
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        Self::from_polynomial(Polynomial::var(dim, axis))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let dim = p.dim();
        let mut layers = BTreeMap::new();
        if !p.is_zero() {
            layers.insert(0, p);
        }
        RhoExpr { dim, layers }
    }

    /// p·ρˢ in normal form.
    pub fn from_layer(s: u32, p: Polynomial) -> Self {
        let dim = p.dim();
        normalize(dim, [(s, p)]).expect("single layer has consistent dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    /// Nonzero layers in ascending power of ρ.
    pub fn layers(&self) -> impl Iterator<Item = (u32, &Polynomial)> + '_ {
        self.layers.iter().map(|(s, p)| (*s, p))
    }

    pub fn layer(&self, s: u32) -> Option<&Polynomial> {
        self.layers.get(&s)
    }

    pub fn max_rho_power(&self) -> u32 {
        self.layers.keys().next_back().copied().unwrap_or(0)
    }

    /// The element as a polynomial, if it has no ρ layers.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self.layers.len() {
            0 => Some(Polynomial::zero(self.dim)),
            1 => self.layers.get(&0).cloned(),
            _ => None,
        }
    }

    fn check_dim(&self, other: &RhoExpr) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RhoExpr) -> Result<RhoExpr> {
        self.check_dim(other)?;
        let mut layers = self.layers.clone();
        for (s, p) in &other.layers {
            let dim = self.dim;
            layers.entry(*s).or_insert_with(|| Polynomial::zero(dim)).add_scaled(p, &Rational::one());
        }
        // a sum of normal forms is a normal form once cancelled layers are dropped
        layers.retain(|_, p| !p.is_zero());
        Ok(RhoExpr { dim: self.dim, layers })
    }

    pub fn try_sub(&self, other: &RhoExpr) -> Result<RhoExpr> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &RhoExpr) -> Result<RhoExpr> {
        self.check_dim(other)?;
        let mut raw = Raw::new(self.dim);
        for (sa, pa) in &self.layers {
            for (sb, pb) in &other.layers {
                for (ma, a) in pa.terms() {
                    for (mb, b) in pb.terms() {
                        raw.add(sa + sb, ma.mul(mb), a * b);
                    }
                }
            }
        }
        Ok(raw.finish())
    }

    pub fn scale(&self, c: &Rational) -> RhoExpr {
        if c.is_zero() {
            return RhoExpr::zero(self.dim);
        }
        RhoExpr {
            dim: self.dim,
            layers: self.layers.iter().map(|(s, p)| (*s, p.scale(c))).collect(),
        }
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<RhoExpr> {
        self.try_mul(&RhoExpr::from_polynomial(p.clone()))
    }

    pub fn pow(&self, e: u32) -> RhoExpr {
        let mut acc = RhoExpr::one(self.dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// ∂/∂x^axis using ∂ₜρ = 2tρ² and ∂ₓᵢρ = −2xᵢρ².
    pub fn partial_derivative(&self, axis: usize) -> Result<RhoExpr> {
        if axis >= self.dim {
            return Err(Error::AxisOutOfRange { axis, dim: self.dim });
        }
        let sign = if axis == 0 { 2 } else { -2 };
        let mut raw = Raw::new(self.dim);
        for (&s, p) in &self.layers {
            for (m, c) in p.terms() {
                let e = m.exponent(axis);
                if e > 0 {
                    raw.add(s, m.shifted(axis, -1), c * rational::int(e as i64));
                }
                if s > 0 {
                    raw.add(s + 1, m.shifted(axis, 1), c * rational::int(sign * s as i64));
                }
            }
        }
        Ok(raw.finish())
    }

    /// □ = −∂ₜₜ + Σ ∂ₓᵢₓᵢ.
    ///
    /// Applied termwise as
    /// □(mρˢ) = (□m)ρˢ + s(4s + 4 − 4 deg m − 2n)·mρˢ⁺¹ − 4s(s+1)·mρˢ⁺²,
    /// which already folds (x·x)ρˢ⁺² = ρˢ⁺¹ − ρˢ⁺².
    pub fn dalembertian(&self) -> RhoExpr {
        let n = self.dim as i64;
        let mut raw = Raw::new(self.dim);
        for (&s, p) in &self.layers {
            let si = s as i64;
            for (m, c) in p.terms() {
                for axis in 0..self.dim {
                    let e = m.exponent(axis) as i64;
                    if e >= 2 {
                        let sign = if axis == 0 { -1 } else { 1 };
                        raw.add(s, m.shifted(axis, -2), c * rational::int(sign * e * (e - 1)));
                    }
                }
                if s > 0 {
                    let d = m.degree() as i64;
                    raw.add(s + 1, m.clone(), c * rational::int(si * (4 * si + 4 - 4 * d - 2 * n)));
                    raw.add(s + 2, m.clone(), c * rational::int(-4 * si * (si + 1)));
                }
            }
        }
        raw.finish()
    }

    /// Euler operator H = t∂ₜ + Σ xᵢ∂ₓᵢ, using H(mρˢ) = (deg m − 2s)mρˢ + 2s·mρˢ⁺¹.
    pub fn euler_h(&self) -> RhoExpr {
        let mut raw = Raw::new(self.dim);
        for (&s, p) in &self.layers {
            let si = s as i64;
            for (m, c) in p.terms() {
                raw.add(s, m.clone(), c * rational::int(m.degree() as i64 - 2 * si));
                if s > 0 {
                    raw.add(s + 1, m.clone(), c * rational::int(2 * si));
                }
            }
        }
        raw.finish()
    }

    pub fn eval(&self, p: &MinkowskiPoint) -> Result<f64> {
        self.compile().eval(&p.coords)
    }

    /// Floating-point copy for repeated evaluation.
    pub fn compile(&self) -> EvalExpr {
        EvalExpr {
            dim: self.dim,
            layers: self
                .layers
                .iter()
                .map(|(s, p)| {
                    let terms = p
                        .terms()
                        .map(|(m, c)| (rational::to_f64(c), m.exponents().into()))
                        .collect();
                    (*s as i32, terms)
                })
                .collect(),
        }
    }
}

/// A [`RhoExpr`] with `f64` coefficients, evaluated by direct substitution.
#[derive(Clone, Debug)]
pub struct EvalExpr {
    dim: usize,
    layers: Vec<(i32, Vec<(f64, Exponents)>)>,
}

impl EvalExpr {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: x.len() });
        }
        let rho = 1.0 / one_plus_norm_checked(x)?;
        let mut total = 0.0;
        for (s, terms) in &self.layers {
            let mut layer = 0.0;
            for (c, exps) in terms {
                let mut v = *c;
                for (&e, &xi) in exps.iter().zip(x) {
                    if e > 0 {
                        v *= xi.powi(e as i32);
                    }
                }
                layer += v;
            }
            total += layer * rho.powi(*s);
        }
        Ok(total)
    }
}

impl fmt::Display for RhoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "0");
        }
        for (i, (&s, p)) in self.layers.iter().enumerate() {
            let rho = match s {
                0 => String::new(),
                1 => "ρ".to_string(),
                _ => format!("ρ{}", poly::superscript(s)),
            };
            let (neg, body) = if p.len() == 1 {
                let (m, c) = p.terms().next().expect("one term");
                let abs = Polynomial::from_terms(self.dim, [(m.clone(), c.abs())]);
                let body = if s > 0 && m.degree() == 0 && c.abs().is_one() {
                    String::new()
                } else {
                    abs.to_string()
                };
                (c.is_negative(), body)
            } else if s == 0 {
                (false, p.to_string())
            } else {
                (false, format!("({p})"))
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{body}{rho}")?;
        }
        Ok(())
    }
}

impl Add for &RhoExpr {
    type Output = RhoExpr;
    fn add(self, rhs: &RhoExpr) -> RhoExpr {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &RhoExpr {
    type Output = RhoExpr;
    fn sub(self, rhs: &RhoExpr) -> RhoExpr {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul for &RhoExpr {
    type Output = RhoExpr;
    fn mul(self, rhs: &RhoExpr) -> RhoExpr {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &RhoExpr {
    type Output = RhoExpr;
    fn neg(self) -> RhoExpr {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly_var(dim: usize, axis: usize) -> Polynomial {
        Polynomial::var(dim, axis)
    }

    #[test]
    fn defining_relation_reduces_to_one() {
        let q = Polynomial::one_plus_norm_sq(2);
        assert_eq!(normalize(2, [(1, q.clone())]).unwrap(), RhoExpr::one(2));
        let rho = RhoExpr::rho(2);
        assert_eq!(&rho * &RhoExpr::from_polynomial(q), RhoExpr::one(2));
    }

    #[test]
    fn layer_zero_is_unconstrained() {
        let x2 = poly_var(2, 1).pow(2);
        let e = normalize(2, [(0, x2.clone())]).unwrap();
        assert_eq!(e.layer(0), Some(&x2));
        assert_eq!(e.max_rho_power(), 0);
    }

    #[test]
    fn double_reduction() {
        let q = Polynomial::one_plus_norm_sq(2);
        let t = poly_var(2, 0);
        let e = normalize(2, [(2, &q.pow(2) * &t)]).unwrap();
        assert_eq!(e, RhoExpr::var(2, 0));
    }

    #[test]
    fn normal_form_layers_have_low_t_degree() {
        let t = poly_var(3, 0);
        let e = normalize(3, [(3, t.pow(7)), (1, t.pow(4))]).unwrap();
        for (s, p) in e.layers() {
            if s > 0 {
                assert!(p.t_degree() <= 1);
            }
        }
    }

    #[test]
    fn additive_inverse_and_square() {
        let rho = RhoExpr::rho(2);
        assert!((&rho + &(-&rho)).is_zero());
        assert_eq!(&rho * &rho, RhoExpr::rho_pow(2, 2));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            RhoExpr::rho(2).try_add(&RhoExpr::rho(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(normalize(2, [(0, Polynomial::one(3))]).is_err());
    }

    #[test]
    fn partial_derivative_examples() {
        let rho = RhoExpr::rho(2);
        let expected = normalize(2, [(2, poly_var(2, 0).scale(&int(2)))]).unwrap();
        assert_eq!(rho.partial_derivative(0).unwrap(), expected);
        let x3 = RhoExpr::from_polynomial(poly_var(2, 1).pow(3));
        assert_eq!(
            x3.partial_derivative(1).unwrap(),
            RhoExpr::from_polynomial(poly_var(2, 1).pow(2).scale(&int(3)))
        );
        assert!(RhoExpr::constant(2, int(5)).partial_derivative(0).unwrap().is_zero());
        assert!(rho.partial_derivative(2).is_err());
    }

    #[test]
    fn dalembertian_examples() {
        // □ρ = 4ρ² − 8ρ³ for n = 2
        let expected = &RhoExpr::rho_pow(2, 2).scale(&int(4)) - &RhoExpr::rho_pow(2, 3).scale(&int(8));
        assert_eq!(RhoExpr::rho(2).dalembertian(), expected);
        let t2 = RhoExpr::from_polynomial(poly_var(2, 0).pow(2));
        assert_eq!(t2.dalembertian(), RhoExpr::constant(2, int(-2)));
        let tx = RhoExpr::from_polynomial(&poly_var(2, 0) * &poly_var(2, 1));
        assert!(tx.dalembertian().is_zero());
    }

    #[test]
    fn euler_examples() {
        let tx = RhoExpr::from_polynomial(&poly_var(2, 0) * &poly_var(2, 1));
        assert_eq!(tx.euler_h(), tx.scale(&int(2)));
        let rho = RhoExpr::rho(2);
        let expected = &rho.scale(&int(-2)) + &RhoExpr::rho_pow(2, 2).scale(&int(2));
        assert_eq!(rho.euler_h(), expected);
        assert!(RhoExpr::one(2).euler_h().is_zero());
    }

    #[test]
    fn euler_of_rho_times_squared_norm_numerically() {
        // H(ρ)·(1+x²)² = −2x·x
        let h = RhoExpr::rho(2).euler_h().compile();
        for &(t, x) in &[(0.1, 0.3), (0.7, -1.2), (-0.4, 2.0)] {
            let q: f64 = 1.0 - t * t + x * x;
            let lhs = h.eval(&[t, x]).unwrap() * q * q;
            assert!((lhs - (-2.0 * (x * x - t * t))).abs() < 1e-12);
        }
    }

    #[test]
    fn evaluation() {
        assert_eq!(RhoExpr::rho(2).eval(&MinkowskiPoint::origin(2)).unwrap(), 1.0);
        let xrho = &RhoExpr::var(2, 1) * &RhoExpr::rho(2);
        assert_eq!(xrho.eval(&MinkowskiPoint::new([0.0, 1.0])).unwrap(), 0.5);
        let singular = MinkowskiPoint::new([2f64.sqrt(), 1.0]);
        assert!(matches!(RhoExpr::rho(2).eval(&singular), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn display() {
        let e = &RhoExpr::rho_pow(2, 2).scale(&int(4)) - &RhoExpr::rho_pow(2, 3).scale(&int(8));
        assert_eq!(e.to_string(), "4ρ² - 8ρ³");
        assert_eq!(RhoExpr::rho(2).to_string(), "ρ");
        let xrho = &RhoExpr::var(2, 1) * &RhoExpr::rho(2);
        assert_eq!(xrho.to_string(), "xρ");
        assert_eq!(RhoExpr::zero(2).to_string(), "0");
    }
}
