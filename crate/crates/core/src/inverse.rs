//! Ray integrals for the inverse Euler operators and recovery of P_r from φ.
//!
//! For a function f defined along the segment from the origin to x,
//!
//! ```text
//! (H + k + 1)⁻¹ f (x) = ∫₀¹ tᵏ f(tx) dt
//! (H + m + 1)⁻¹ (H + k + 1)⁻¹ f (x) = ∫₀¹∫₀¹ tᵏ sᵐ f(stx) dt ds
//! ```
//!
//! In two dimensions φ = P₀ + P₁ρ gives P₀ = φ − (H+1)⁻¹(2ρφ) and
//! P₁ = ρ⁻¹(H+1)⁻¹(2ρφ). In four dimensions, with g = ρ(H+1)φ and q = 1 + x·x,
//!
//! ```text
//! P₀ = φ − 6 (H+2)⁻¹(H+3)⁻¹ g
//! P₁ = (4H + 8)⁻¹ [8q(H+3)(φ − P₀) − 32φ + 8P₀]
//! P₂ = q²(φ − P₀) − qP₁
//! ```
//!
//! Since (H+3)(φ − P₀) = 6(H+2)⁻¹g, the bracket in P₁ is a combination of ray
//! integrals of g and φ. Composing the outer (H+2)⁻¹ with them and integrating
//! out the inner variable leaves the single integral
//!
//! ```text
//! P₁(x) = 12 ∫₀¹ u(1−u)(1 + (x·x)(1+u)/2) g(ux) du − 6 ∫₀¹ u φ(ux) du.
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::ring::{minkowski_norm_sq, EvalExpr, MinkowskiPoint, RhoExpr};

pub const DEFAULT_DELTA: f64 = 0.25;

/// Relative step of the directional differences used for H on sampled fields.
pub const FD_STEP: f64 = 1e-5;

type SampleFn = dyn Fn(&[f64]) -> Result<f64> + Send + Sync;

#[derive(Clone)]
enum Source {
    Exact { expr: RhoExpr, compiled: EvalExpr },
    Sampled(Arc<SampleFn>),
}

/// A scalar field known along every ray from the origin inside
/// {x : 1 + s²(x·x) ≥ δ for all s ∈ [0, 1]}.
#[derive(Clone)]
pub struct RayField {
    dim: usize,
    delta: f64,
    source: Source,
}

impl fmt::Debug for RayField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = match &self.source {
            Source::Exact { expr, .. } => format!("exact {expr}"),
            Source::Sampled(_) => "sampled".to_string(),
        };
        f.debug_struct("RayField").field("dim", &self.dim).field("delta", &self.delta).field("source", &src).finish()
    }
}

impl RayField {
    pub fn exact(expr: RhoExpr) -> Self {
        let compiled = expr.compile();
        RayField { dim: expr.dim(), delta: DEFAULT_DELTA, source: Source::Exact { expr, compiled } }
    }

    pub fn sampled(dim: usize, f: impl Fn(&[f64]) -> Result<f64> + Send + Sync + 'static) -> Self {
        RayField { dim, delta: DEFAULT_DELTA, source: Source::Sampled(Arc::new(f)) }
    }

    /// Same values, but only the black-box evaluator is kept.
    pub fn to_sampled(&self) -> Self {
        match &self.source {
            Source::Sampled(_) => self.clone(),
            Source::Exact { compiled, .. } => {
                let c = compiled.clone();
                RayField { dim: self.dim, delta: self.delta, source: Source::Sampled(Arc::new(move |x| c.eval(x))) }
            }
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::Domain(format!("domain margin δ = {delta} must lie in (0, 1]")));
        }
        self.delta = delta;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn expr(&self) -> Option<&RhoExpr> {
        match &self.source {
            Source::Exact { expr, .. } => Some(expr),
            Source::Sampled(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.expr().is_some()
    }

    /// Whether the whole segment [0, x] keeps 1 + x·x ≥ δ.
    pub fn in_domain(&self, x: &[f64]) -> bool {
        1.0 + minkowski_norm_sq(x).min(0.0) >= self.delta
    }

    pub fn check_point(&self, x: &MinkowskiPoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: x.dim() });
        }
        if x.coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        if !self.in_domain(&x.coords) {
            return Err(Error::Domain(format!(
                "ray to {:?} leaves the region 1 + s²(x·x) ≥ {}",
                x.coords, self.delta
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match &self.source {
            Source::Exact { compiled, .. } => compiled.eval(x),
            Source::Sampled(f) => f(x),
        }
    }

    /// ρ(H + c)f. Exact fields stay exact; sampled fields use a central
    /// difference along the ray direction.
    pub fn rho_times_h_shift(&self, c: i64) -> RayField {
        match &self.source {
            Source::Exact { expr, .. } => {
                let shifted = &expr.euler_h() + &expr.scale(&crate::rational::int(c));
                let g = &shifted * &RhoExpr::rho(self.dim);
                RayField { delta: self.delta, ..RayField::exact(g) }
            }
            Source::Sampled(_) => {
                let base = self.clone();
                let f = move |y: &[f64]| -> Result<f64> {
                    let q = 1.0 + minkowski_norm_sq(y);
                    Ok((euler_fd(&base, y)? + c as f64 * base.evaluate(y)?) / q)
                };
                RayField { dim: self.dim, delta: self.delta, source: Source::Sampled(Arc::new(f)) }
            }
        }
    }

    /// (Hf)(x), exactly or by directional differences.
    pub fn euler_at(&self, x: &MinkowskiPoint) -> Result<f64> {
        self.check_point(x)?;
        match &self.source {
            Source::Exact { expr, .. } => expr.euler_h().eval(x),
            Source::Sampled(_) => {
                check_fd_step(&x.coords)?;
                euler_fd(self, &x.coords)
            }
        }
    }
}

fn euclid_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn check_fd_step(x: &[f64]) -> Result<()> {
    let norm = euclid_norm(x);
    let step = FD_STEP * (1.0 + norm);
    if norm < step {
        return Err(Error::FdStepUnderflow { norm, step });
    }
    Ok(())
}

/// Hf(y) = |y| ∂_ŷ f(y) by a central difference of width h = FD_STEP·(1 + |y|).
/// Vanishes at the origin.
fn euler_fd(f: &RayField, y: &[f64]) -> Result<f64> {
    let norm = euclid_norm(y);
    if norm == 0.0 {
        return Ok(0.0);
    }
    let h = FD_STEP * (1.0 + norm);
    let eps = h / norm;
    let plus: Vec<f64> = y.iter().map(|v| v * (1.0 + eps)).collect();
    let minus: Vec<f64> = y.iter().map(|v| v * (1.0 - eps)).collect();
    Ok((f.evaluate(&plus)? - f.evaluate(&minus)?) / (2.0 * eps))
}

/// ∫₀¹ w(t) f(tx) dt with a scalar weight.
fn ray_integral(f: &RayField, x: &[f64], q: &QuadratureSpec, w: impl Fn(f64) -> f64) -> Result<f64> {
    let mut buf = vec![0.0; x.len()];
    let r = q.integrate(
        |t| {
            for (b, v) in buf.iter_mut().zip(x) {
                *b = t * v;
            }
            Ok(w(t) * f.evaluate(&buf)?)
        },
        0.0,
        1.0,
    )?;
    Ok(r.value)
}

/// (H + k + 1)⁻¹ f at x.
pub fn h_shift_inverse(f: &RayField, k: u32, x: &MinkowskiPoint, q: &QuadratureSpec) -> Result<f64> {
    f.check_point(x)?;
    ray_integral(f, &x.coords, q, |t| t.powi(k as i32))
}

/// (H + m + 1)⁻¹ (H + k + 1)⁻¹ f at x, as a tensor-product integral over (s, t).
pub fn h_shift_inverse2(f: &RayField, k: u32, m: u32, x: &MinkowskiPoint, q: &QuadratureSpec) -> Result<f64> {
    f.check_point(x)?;
    let mut buf = vec![0.0; x.dim()];
    let r = q.integrate2(
        |s, t| {
            let st = s * t;
            for (b, v) in buf.iter_mut().zip(&x.coords) {
                *b = st * v;
            }
            Ok(t.powi(k as i32) * s.powi(m as i32) * f.evaluate(&buf)?)
        },
        (0.0, 1.0),
        (0.0, 1.0),
    )?;
    Ok(r.value)
}

/// (P₀(x), P₁(x)) for a two-dimensional solution φ = P₀ + P₁ρ.
pub fn recover_n2(phi: &RayField, x: &MinkowskiPoint, q: &QuadratureSpec) -> Result<(f64, f64)> {
    if phi.dim() != 2 {
        return Err(Error::UnsupportedDim { dim: phi.dim(), reason: "recover_n2 needs a two-dimensional field" });
    }
    phi.check_point(x)?;
    let two_rho_phi = {
        let base = phi.clone();
        let f = move |y: &[f64]| -> Result<f64> { Ok(2.0 * base.evaluate(y)? / (1.0 + minkowski_norm_sq(y))) };
        RayField { dim: 2, delta: phi.delta, source: Source::Sampled(Arc::new(f)) }
    };
    let i = h_shift_inverse(&two_rho_phi, 0, x, q)?;
    let p0 = phi.evaluate(&x.coords)? - i;
    let p1 = (1.0 + x.minkowski_norm_sq()) * i;
    Ok((p0, p1))
}

/// (P₀(x), P₁(x), P₂(x)) for a four-dimensional solution φ = P₀ + P₁ρ + P₂ρ².
pub fn recover_n4(phi: &RayField, x: &MinkowskiPoint, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    if phi.dim() != 4 {
        return Err(Error::UnsupportedDim { dim: phi.dim(), reason: "recover_n4 needs a four-dimensional field" });
    }
    phi.check_point(x)?;
    if !phi.is_exact() {
        check_fd_step(&x.coords)?;
    }
    let g = phi.rho_times_h_shift(1);
    let s = x.minkowski_norm_sq();
    let qx = 1.0 + s;
    let value = phi.evaluate(&x.coords)?;

    let g23 = h_shift_inverse2(&g, 1, 2, x, q)?;
    let p0 = value - 6.0 * g23;

    let a = ray_integral(&g, &x.coords, q, |u| u * (1.0 - u) * (1.0 + 0.5 * s * (1.0 + u)))?;
    let b = ray_integral(phi, &x.coords, q, |u| u)?;
    let p1 = 12.0 * a - 6.0 * b;

    let p2 = qx * qx * (value - p0) - qx * p1;
    Ok((p0, p1, p2))
}

/// |got − want| / |want|, or |got| when the reference is exactly zero.
pub fn relative_error(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}
