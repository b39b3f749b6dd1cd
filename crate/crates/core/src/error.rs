use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input document or argument value.
    Parse,
    /// Point, grid or parameter outside the region where the operation is defined.
    Domain,
    /// A numerical procedure could not reach the requested accuracy.
    Tolerance,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("singular point: 1 + x·x = {value:e}")]
    SingularPoint { value: f64 },

    #[error("unsupported dimension n = {dim}: {reason}")]
    UnsupportedDim { dim: usize, reason: &'static str },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: u32, max: u32 },

    #[error("recursion index r = {r} out of range for n = {dim} (need r < n/2)")]
    IndexOutOfRange { r: usize, dim: usize },

    #[error("seed is not annihilated by the d'Alembertian")]
    NotAWavePolynomial,

    #[error("divergent integral: Beta argument {arg} at r = {r} is not positive")]
    DivergentIntegral { r: usize, arg: i64 },

    #[error("hypergeometric series does not terminate: no upper parameter is a non-positive integer")]
    NonTerminating,

    #[error("lower parameter c = {c} hits a pole before the series terminates")]
    BadC { c: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tolerance not met: estimated error {estimate:e} > {tol:e} after {subdivisions} subdivisions")]
    ToleranceNotMet { estimate: f64, tol: f64, subdivisions: usize },

    #[error("finite-difference step underflow at |x| = {norm:e} (step {step:e})")]
    FdStepUnderflow { norm: f64, step: f64 },

    #[error("kernel pole: 1 - a² + w² vanishes at w = {w} inside the integration interval")]
    KernelPole { w: f64 },

    #[error("singular region at (x, t) = ({x}, {t}): 1 + x² - t² = {value:e} below {eps:e}")]
    SingularRegion { x: f64, t: f64, value: f64, eps: f64 },

    #[error("CFL number {cfl} outside (0, {max}]")]
    CflViolation { cfl: f64, max: f64 },

    #[error("grid too small: {nx}×{nt} (need at least {min} in each direction)")]
    GridTooSmall { nx: usize, nt: usize, min: usize },

    #[error("invalid grid: {0}")]
    BadGrid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("at node (x, t) = ({x}, {t}): {inner}")]
    AtNode { x: f64, t: f64, inner: Box<Error> },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::ToleranceNotMet { .. } => ErrorKind::Tolerance,
            Error::AtNode { inner, .. } => inner.kind(),
            _ => ErrorKind::Domain,
        }
    }
}
