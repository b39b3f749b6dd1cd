//! The two-dimensional Cauchy problem
//!
//! ```text
//! −φ_tt + φ_xx + 8φ/(1 + x² − t²)² = 0,   φ(x, a) = u₀(x),   φ_t(x, a) = v₀(x)
//! ```
//!
//! solved in closed form by a boundary average plus two kernel integrals over
//! the past light cone, and independently by a leapfrog finite-difference scheme.
//!
//! With D = 1 + x² − t² and integrals oriented from w = x + (t − a) to w = x − (t − a):
//!
//! ```text
//! φ(x,t) = ½[u₀(x−(t−a)) + u₀(x+(t−a))]
//!        − 2 ∫ [t(1 + a² + w²) + a(x² − 2wx − t² − 1)] / [D (1 − a² + w²)²] u₀(w) dw
//!        − ½ ∫ [(1 − x² + t²)(1 + a² − w²) − 4at + 4wx] / [D (1 − a² + w²)] v₀(w) dw
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field2D, Grid2D};
use crate::quadrature::QuadratureSpec;
use crate::ring::{EvalExpr, RhoExpr};
use crate::spline::CubicSpline;

/// Smallest admissible 1 + x² − t².
pub const EPS_SING: f64 = 1e-3;

pub const MAX_CFL: f64 = 0.95;

/// Step of the one-sided difference used for the velocity check.
pub const VELOCITY_STEP: f64 = 1e-4;

type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;

/// One initial profile w ↦ value on the slice t = a.
#[derive(Clone)]
pub enum Profile {
    Function(Arc<ScalarFn>),
    /// An exact two-dimensional expression frozen at t = a.
    Exact { expr: EvalExpr, a: f64 },
    Spline(CubicSpline),
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Function(_) => write!(f, "Function"),
            Profile::Exact { a, .. } => write!(f, "Exact(t = {a})"),
            Profile::Spline(s) => write!(f, "Spline{:?}", s.range()),
        }
    }
}

impl Profile {
    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Profile::Function(Arc::new(f))
    }

    pub fn zero() -> Self {
        Profile::function(|_| 0.0)
    }

    pub fn eval(&self, w: f64) -> Result<f64> {
        match self {
            Profile::Function(f) => Ok(f(w)),
            Profile::Exact { expr, a } => expr.eval(&[*a, w]),
            Profile::Spline(s) => s.eval(w),
        }
    }

    /// Interval on which the profile is known, if bounded.
    pub fn range(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Spline(s) => Some(s.range()),
            _ => None,
        }
    }

    fn check_covers(&self, lo: f64, hi: f64) -> Result<()> {
        if let Some((a, b)) = self.range() {
            if lo < a || hi > b {
                return Err(Error::Domain(format!(
                    "light cone [{lo}, {hi}] exceeds tabulated data range [{a}, {b}]"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct InitialData {
    pub a: f64,
    pub u0: Profile,
    pub v0: Profile,
}

impl InitialData {
    pub fn new(a: f64, u0: Profile, v0: Profile) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Domain(format!("initial time {a} is not finite")));
        }
        Ok(InitialData { a, u0, v0 })
    }

    pub fn zero(a: f64) -> Self {
        InitialData { a, u0: Profile::zero(), v0: Profile::zero() }
    }

    pub fn from_functions(
        a: f64,
        u0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        v0: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        InitialData::new(a, Profile::function(u0), Profile::function(v0))
    }

    /// Position and velocity of an exact two-dimensional expression at t = a.
    pub fn from_exact(phi: &RhoExpr, a: f64) -> Result<Self> {
        if phi.dim() != 2 {
            return Err(Error::UnsupportedDim { dim: phi.dim(), reason: "the Cauchy kernel is two-dimensional" });
        }
        let v = phi.partial_derivative(0)?;
        InitialData::new(a, Profile::Exact { expr: phi.compile(), a }, Profile::Exact { expr: v.compile(), a })
    }

    /// Tabulated samples, interpolated by natural cubic splines.
    pub fn from_samples(a: f64, ws: &[f64], u0: &[f64], v0: &[f64]) -> Result<Self> {
        let u = CubicSpline::new(ws.to_vec(), u0.to_vec())?;
        let v = CubicSpline::new(ws.to_vec(), v0.to_vec())?;
        InitialData::new(a, Profile::Spline(u), Profile::Spline(v))
    }
}

fn check_regular(x: f64, t: f64) -> Result<f64> {
    if !x.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!("non-finite point ({x}, {t})")));
    }
    let value = 1.0 + x * x - t * t;
    if value < EPS_SING {
        return Err(Error::SingularRegion { x, t, value, eps: EPS_SING });
    }
    Ok(value)
}

/// Zero of 1 − a² + w² inside [lo, hi], if any.
fn kernel_pole(a: f64, lo: f64, hi: f64) -> Option<f64> {
    let r2 = a * a - 1.0;
    if r2 < 0.0 {
        return None;
    }
    let r = r2.sqrt();
    [-r, r].into_iter().find(|w| (lo..=hi).contains(w))
}

/// φ(x, t) for t ≥ a from the closed-form kernel.
pub fn evolve_point(d: &InitialData, x: f64, t: f64, q: &QuadratureSpec) -> Result<f64> {
    let dd = check_regular(x, t)?;
    let a = d.a;
    if t < a {
        return Err(Error::Domain(format!("t = {t} precedes the initial slice a = {a}")));
    }
    if t == a {
        return d.u0.eval(x);
    }
    let tau = t - a;
    let (left, right) = (x - tau, x + tau);
    if let Some(w) = kernel_pole(a, left, right) {
        return Err(Error::KernelPole { w });
    }
    d.u0.check_covers(left, right)?;
    d.v0.check_covers(left, right)?;

    let boundary = 0.5 * (d.u0.eval(left)? + d.u0.eval(right)?);
    let (a2, x2, t2) = (a * a, x * x, t * t);
    let k1 = |w: f64| -> Result<f64> {
        let pole = 1.0 - a2 + w * w;
        let num = t * (1.0 + a2 + w * w) + a * (x2 - 2.0 * w * x - t2 - 1.0);
        Ok(num / (dd * pole * pole) * d.u0.eval(w)?)
    };
    let k2 = |w: f64| -> Result<f64> {
        let num = (1.0 - x2 + t2) * (1.0 + a2 - w * w) - 4.0 * a * t + 4.0 * w * x;
        Ok(num / (dd * (1.0 - a2 + w * w)) * d.v0.eval(w)?)
    };
    let i1 = q.integrate(k1, right, left)?.value;
    let i2 = q.integrate(k2, right, left)?.value;
    Ok(boundary - 2.0 * i1 - 0.5 * i2)
}

fn at_node(x: f64, t: f64) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        e @ Error::SingularRegion { .. } => e,
        e => Error::AtNode { x, t, inner: Box::new(e) },
    }
}

/// Checks every node against the singular set before any work is done.
pub fn check_grid(g: &Grid2D) -> Result<()> {
    g.validate()?;
    for (_, _, x, t) in g.nodes() {
        check_regular(x, t)?;
    }
    Ok(())
}

pub fn evolve_grid(d: &InitialData, g: &Grid2D, q: &QuadratureSpec) -> Result<Field2D> {
    check_grid(g)?;
    Field2D::from_fn(*g, |x, t| evolve_point(d, x, t, q).map_err(at_node(x, t)))
}

fn potential(x: f64, t: f64) -> f64 {
    let s = 1.0 + x * x - t * t;
    8.0 / (s * s)
}

/// Leapfrog reference solution on `g`, with the time step refined to meet the
/// CFL bound and the spatial domain padded so the boundary never reaches `g`.
pub fn fd_reference(d: &InitialData, g: &Grid2D, cfl: f64) -> Result<Field2D> {
    if !(cfl > 0.0 && cfl <= MAX_CFL) {
        return Err(Error::CflViolation { cfl, max: MAX_CFL });
    }
    g.validate()?;
    let a = d.a;
    if g.t_min < a {
        return Err(Error::BadGrid(format!("t_min = {} precedes the initial slice a = {a}", g.t_min)));
    }
    let dx = g.dx();
    let dt_grid = g.dt();
    let sub = (dt_grid / (cfl * dx) - 1e-9).ceil().max(1.0) as usize;
    let dt = dt_grid / sub as f64;
    let lead = (g.t_min - a) / dt;
    let lead_steps = lead.round();
    if (lead - lead_steps).abs() > 1e-8 * lead.max(1.0) {
        return Err(Error::BadGrid(format!(
            "t_min − a = {} is not a multiple of the time step {dt}",
            g.t_min - a
        )));
    }
    let lead_steps = lead_steps as usize;
    let total = lead_steps + (g.nt - 1) * sub;
    let pad = total + 2;
    let n = g.nx + 2 * pad;
    let xs: Vec<f64> = (0..n).map(|i| g.x_min + (i as f64 - pad as f64) * dx).collect();

    let t_far = if a.abs() > g.t_max.abs() { a } else { g.t_max };
    let x_near = xs.iter().copied().fold(f64::INFINITY, |m, x| if x.abs() < m.abs() { x } else { m });
    let x_near = if xs[0] <= 0.0 && xs[n - 1] >= 0.0 { 0.0 } else { x_near };
    check_regular(x_near, t_far)?;

    let u0 = xs.iter().map(|&x| d.u0.eval(x)).collect::<Result<Vec<_>>>()?;
    let v0 = xs.iter().map(|&x| d.v0.eval(x)).collect::<Result<Vec<_>>>()?;
    let lap = |u: &[f64], i: usize| (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);

    let mut values = Vec::with_capacity(g.len());
    let mut record = |level: usize, u: &[f64]| {
        if level >= lead_steps && (level - lead_steps) % sub == 0 {
            values.extend_from_slice(&u[pad..pad + g.nx]);
        }
    };

    let mut prev = u0.clone();
    record(0, &prev);
    if total == 0 {
        return Field2D::new(*g, values);
    }
    let mut cur = u0.clone();
    for i in 1..n - 1 {
        cur[i] = u0[i] + dt * v0[i] + 0.5 * dt * dt * (lap(&u0, i) + potential(xs[i], a) * u0[i]);
    }
    record(1, &cur);
    let mut next = cur.clone();
    for level in 1..total {
        let t = a + level as f64 * dt;
        for i in 1..n - 1 {
            next[i] = 2.0 * cur[i] - prev[i] + dt * dt * (lap(&cur, i) + potential(xs[i], t) * cur[i]);
        }
        next[0] = cur[0];
        next[n - 1] = cur[n - 1];
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
        record(level + 1, &cur);
    }
    Field2D::new(*g, values)
}

/// −D_tt φ + D_xx φ + 8φ/(1 + x² − t²)² at the interior nodes by central differences.
pub fn pde_residual_fd(f: &Field2D) -> Result<Field2D> {
    let g = f.grid();
    if g.nx < 5 || g.nt < 5 {
        return Err(Error::GridTooSmall { nx: g.nx, nt: g.nt, min: 5 });
    }
    let (dx, dt) = (g.dx(), g.dt());
    let inner = g.interior()?;
    let mut values = Vec::with_capacity(inner.len());
    for j in 1..g.nt - 1 {
        for i in 1..g.nx - 1 {
            let (x, t) = (g.x(i), g.t(j));
            let c = f.get(i, j);
            let dtt = (f.get(i, j + 1) - 2.0 * c + f.get(i, j - 1)) / (dt * dt);
            let dxx = (f.get(i + 1, j) - 2.0 * c + f.get(i - 1, j)) / (dx * dx);
            values.push(-dtt + dxx + potential(x, t) * c);
        }
    }
    Field2D::new(inner, values)
}

/// Largest deviations of φ(·, a) from u₀ and of ∂ₜφ(·, a) from v₀ over `xs`,
/// the latter by a one-sided fourth-order difference in t.
pub fn initial_condition_check(d: &InitialData, xs: &[f64], q: &QuadratureSpec) -> Result<(f64, f64)> {
    let h = VELOCITY_STEP;
    let mut pos = 0.0f64;
    let mut vel = 0.0f64;
    for &x in xs {
        let f: Vec<f64> =
            (0..5).map(|k| evolve_point(d, x, d.a + k as f64 * h, q)).collect::<Result<_>>()?;
        pos = pos.max((f[0] - d.u0.eval(x)?).abs());
        let dt = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
        vel = vel.max((dt - d.v0.eval(x)?).abs());
    }
    Ok((pos, vel))
}
