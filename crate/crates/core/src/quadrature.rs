//! Globally adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with the n-point rule on the whole panel and on its
//! two halves; the difference is the panel's error estimate. The panel with the
//! largest estimate is split until the summed estimate drops below the absolute
//! tolerance (or below a roundoff floor relative to ∫|f|).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Nodes and weights on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Legendre roots by Newton iteration from the Chebyshev-like initial guess.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "rule needs at least one node");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                    let (_, d) = legendre(n, z);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Returns (∫f, ∫|f|) over [a, b]. Every node lies strictly inside the interval.
    pub fn apply<F>(&self, f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (&z, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * z)?;
            sum += w * v;
            abs_sum += w * v.abs();
        }
        Ok((sum * half, abs_sum * half.abs()))
    }
}

/// P_n(z) and P_n'(z) by the three-term recurrence.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    order: usize,
    max_subdivisions: usize,
    abs_tol: f64,
    rule: Arc<GaussRule>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::new(64, 200, 1e-12).expect("default spec is valid")
    }
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    value: f64,
    abs: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

impl QuadratureSpec {
    pub fn new(order: usize, max_subdivisions: usize, abs_tol: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::Domain(format!("quadrature order {order} must be at least 2")));
        }
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol {abs_tol} must be positive and finite")));
        }
        if max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        Ok(QuadratureSpec { order, max_subdivisions, abs_tol, rule: Arc::new(GaussRule::new(order)) })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn max_subdivisions(&self) -> usize {
        self.max_subdivisions
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rule(&self) -> &GaussRule {
        &self.rule
    }

    pub fn with_abs_tol(&self, abs_tol: f64) -> Result<Self> {
        QuadratureSpec::new(self.order, self.max_subdivisions, abs_tol)
    }

    fn panel<F>(&self, f: &mut F, a: f64, b: f64, whole: Option<f64>) -> Result<Panel>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let m = 0.5 * (a + b);
        let whole = match whole {
            Some(w) => w,
            None => self.rule.apply(f, a, b)?.0,
        };
        let (left, la) = self.rule.apply(f, a, m)?;
        let (right, ra) = self.rule.apply(f, m, b)?;
        let value = left + right;
        Ok(Panel { a, b, left, right, value, abs: la + ra, error: (whole - value).abs() })
    }

    /// Signed integral of `f` from `a` to `b`; `a > b` flips the sign as usual.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<QuadEstimate>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if a == b {
            return Ok(QuadEstimate { value: 0.0, error: 0.0 });
        }
        let mut heap = BinaryHeap::new();
        heap.push(self.panel(&mut f, a, b, None)?);
        let mut splits = 0;
        loop {
            let (value, abs, error) = heap
                .iter()
                .fold((0.0, 0.0, 0.0), |(v, s, e), p| (v + p.value, s + p.abs, e + p.error));
            let floor = 50.0 * f64::EPSILON * abs;
            if error <= self.abs_tol.max(floor) {
                return Ok(QuadEstimate { value, error });
            }
            if splits >= self.max_subdivisions {
                return Err(Error::ToleranceNotMet {
                    estimate: error,
                    tol: self.abs_tol,
                    subdivisions: splits,
                });
            }
            let worst = heap.pop().expect("heap is never empty");
            let m = 0.5 * (worst.a + worst.b);
            heap.push(self.panel(&mut f, worst.a, m, Some(worst.left))?);
            heap.push(self.panel(&mut f, m, worst.b, Some(worst.right))?);
            splits += 1;
        }
    }

    /// ∫_{a0}^{a1} ∫_{b0}^{b1} f(s, t) dt ds as nested adaptive integrals.
    pub fn integrate2<F>(&self, mut f: F, (a0, a1): (f64, f64), (b0, b1): (f64, f64)) -> Result<QuadEstimate>
    where
        F: FnMut(f64, f64) -> Result<f64>,
    {
        let mut inner_err = 0.0f64;
        let outer = self.integrate(
            |s| {
                let r = self.integrate(|t| f(s, t), b0, b1)?;
                inner_err = inner_err.max(r.error);
                Ok(r.value)
            },
            a0,
            a1,
        )?;
        Ok(QuadEstimate { value: outer.value, error: outer.error + inner_err * (a1 - a0).abs() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_symmetric_and_normalized() {
        for n in [2, 3, 7, 16, 64] {
            let r = GaussRule::new(n);
            let total: f64 = r.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n} sum={total}");
            for i in 0..n {
                assert!((r.nodes()[i] + r.nodes()[n - 1 - i]).abs() < 1e-15);
            }
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let q = QuadratureSpec::new(5, 10, 1e-14).unwrap();
        let (v, _) = q.rule().apply(&mut |x: f64| Ok(x.powi(9) + x.powi(8)), 0.0, 1.0).unwrap();
        assert!((v - (0.1 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let q = QuadratureSpec::new(16, 200, 1e-10).unwrap();
        let r = q.integrate(|x: f64| Ok(x.sqrt().ln()), 0.0, 1.0).unwrap();
        assert!((r.value + 0.5).abs() < 1e-9);
    }

    #[test]
    fn orientation_and_budget() {
        let q = QuadratureSpec::default();
        let r = q.integrate(|x| Ok(x), 1.0, 0.0).unwrap();
        assert!((r.value + 0.5).abs() < 1e-15);
        let tight = QuadratureSpec::new(4, 2, 1e-14).unwrap();
        let err = tight.integrate(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::ToleranceNotMet { .. }));
    }

    #[test]
    fn nested_integral() {
        let q = QuadratureSpec::default();
        let r = q.integrate2(|s, t| Ok(t * s * s), (0.0, 1.0), (0.0, 1.0)).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(QuadratureSpec::new(1, 10, 1e-12).is_err());
        assert!(QuadratureSpec::new(8, 10, 0.0).is_err());
        assert!(QuadratureSpec::new(8, 0, 1e-12).is_err());
    }
}
