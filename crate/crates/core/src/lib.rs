//! Exact and numerical solutions of the perturbed massless wave equation
//!
//! ```text
//! □φ + n(n+2)/(1+x²)² φ = 0,    x = (t, x₁, …, x_{n−1}),   x² = −t² + Σ xᵢ²
//! ```
//!
//! on n-dimensional Minkowski space.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] and [`ring`]: exact multivariate polynomials over ℚ and the quotient
//!   ring ℚ[t, x, ρ]/(ρ(1+x²) − 1) with a canonical normal form, so that every
//!   identity becomes a structural "equals zero" test.
//! * [`basis`]: homogeneous polynomial solutions of the free wave equation.
//! * [`solution`]: the even-dimensional recursion for the coefficients P_r of
//!   φ = Σ P_r ρʳ, plus the background and Beta-coefficient checks.
//! * [`hypergeo`]: terminating ₂F₁ series and the separated radial ODE.
//! * [`quadrature`] and [`inverse`]: ray integrals realizing (H + m)⁻¹ and the
//!   recovery of P_r from φ in two and four dimensions.
//! * [`cauchy`]: the closed-form two-dimensional Cauchy kernel and an independent
//!   leapfrog reference solver.

pub mod basis;
pub mod cauchy;
pub mod doc;
pub mod error;
pub mod field;
pub mod hypergeo;
pub mod inverse;
mod linalg;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod ring;
pub mod solution;
pub mod spline;

pub use basis::{is_wave_polynomial, wave_basis, WaveBasis};
pub use cauchy::{
    evolve_grid, evolve_point, fd_reference, initial_condition_check, pde_residual_fd,
    InitialData, Profile,
};
pub use error::{Error, ErrorKind, Result};
pub use field::{Field2D, Grid2D};
pub use hypergeo::{GaussParams, RationalFunction1D, UPoly};
pub use inverse::{recover_n2, recover_n4, RayField};
pub use poly::{Monomial, Polynomial};
pub use quadrature::QuadratureSpec;
pub use rational::Rational;
pub use ring::{EvalExpr, MinkowskiPoint, RhoExpr};
pub use solution::{build_phi, residual, SolutionBundle};
