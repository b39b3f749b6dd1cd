//! Exact solutions φ = Σ_{r=0}^{n/2} P_r ρʳ for even n.
//!
//! The top coefficient P_{n/2} is a free wave polynomial (the seed) and the rest
//! follow from
//!
//! ```text
//! P_r = 2(r+1)·[2H + (n − 2r − 4)]·P_{r+1} / ((n − 2r)(n + 2r + 2)),
//! ```
//!
//! which keeps every P_r a wave polynomial and makes φ solve
//! □φ + n(n+2)ρ²φ = 0.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::basis::is_wave_polynomial;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::ring::{normalize, MinkowskiPoint, RhoExpr};

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionBundle {
    dim: usize,
    seed: Polynomial,
    coefficients: Vec<Polynomial>,
    phi: RhoExpr,
}

impl SolutionBundle {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> &Polynomial {
        &self.seed
    }

    /// P_{n/2}, …, P₀
    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    /// P_r
    pub fn coefficient(&self, r: usize) -> &Polynomial {
        &self.coefficients[self.dim / 2 - r]
    }

    pub fn phi(&self) -> &RhoExpr {
        &self.phi
    }
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::UnsupportedDim { dim: n, reason: "the finite ρ-expansion needs even n ≥ 2" });
    }
    Ok(())
}

/// One step of the coefficient recursion, P_{r+1} ↦ P_r.
pub fn recursion_step(p_next: &Polynomial, n: usize, r: usize) -> Result<Polynomial> {
    check_even(n)?;
    if r >= n / 2 {
        return Err(Error::IndexOutOfRange { r, dim: n });
    }
    let (n, r) = (n as i64, r as i64);
    let scale = rational::frac(2 * (r + 1), (n - 2 * r) * (n + 2 * r + 2));
    let mut out = p_next.euler().scale(&rational::int(2));
    out.add_scaled(p_next, &rational::int(n - 2 * r - 4));
    Ok(out.scale(&scale))
}

/// Runs the recursion down from `seed = P_{n/2}` and assembles φ.
///
/// The returned bundle has been checked: every P_r is a wave polynomial and the
/// residual of φ is exactly zero.
pub fn build_phi(seed: &Polynomial, n: usize) -> Result<SolutionBundle> {
    check_even(n)?;
    if seed.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: seed.dim() });
    }
    if !is_wave_polynomial(seed) {
        return Err(Error::NotAWavePolynomial);
    }
    let half = n / 2;
    let mut coefficients = vec![seed.clone()];
    for r in (0..half).rev() {
        let next = recursion_step(coefficients.last().expect("nonempty"), n, r)?;
        coefficients.push(next);
    }
    let phi = normalize(
        n,
        coefficients.iter().enumerate().map(|(i, p)| ((half - i) as u32, p.clone())),
    )?;
    let bundle = SolutionBundle { dim: n, seed: seed.clone(), coefficients, phi };
    assert!(
        bundle.coefficients.iter().all(is_wave_polynomial),
        "recursion produced a non-wave coefficient"
    );
    assert!(residual(&bundle.phi, n).is_zero(), "recursion produced a non-solution");
    Ok(bundle)
}

/// □φ + n(n+2)ρ²φ in normal form.
pub fn residual(phi: &RhoExpr, n: usize) -> RhoExpr {
    let n = n as i64;
    let potential = RhoExpr::rho_pow(phi.dim(), 2).scale(&rational::int(n * (n + 2)));
    &phi.dalembertian() + &(&potential * phi)
}

/// □ψ₀ + n(n−2)ψ₀^{(n+2)/(n−2)} for ψ₀ = ρ^{(n−2)/2}; zero for every even n ≥ 4.
pub fn psi0_residual(n: usize) -> Result<RhoExpr> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::UnsupportedDim { dim: n, reason: "ψ₀ is a ring element only for even n ≥ 4" });
    }
    let r = (n as u32 - 2) / 2;
    let psi0 = RhoExpr::rho_pow(n, r);
    let nonlinear = RhoExpr::rho_pow(n, r + 2).scale(&rational::int((n * (n - 2)) as i64));
    Ok(&psi0.dalembertian() + &nonlinear)
}

/// Largest |□χ₀ + 8(k/a)e^{aχ₀}| over `points` for the two-dimensional
/// background χ₀ = (−2/a)·log(k + x·x), using closed-form second derivatives.
pub fn check_n2_background(k: f64, a: f64, points: &[MinkowskiPoint]) -> Result<f64> {
    if k <= 0.0 || a == 0.0 || !k.is_finite() || !a.is_finite() {
        return Err(Error::Domain(format!("need k > 0 and a ≠ 0, got k = {k}, a = {a}")));
    }
    let c = -2.0 / a;
    let mut worst: f64 = 0.0;
    for p in points {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch { left: 2, right: p.dim() });
        }
        let (t, x) = (p.coords[0], p.coords[1]);
        let s = k + p.minkowski_norm_sq();
        if s <= 0.0 {
            return Err(Error::Domain(format!("k + x·x = {s} ≤ 0 at (t, x) = ({t}, {x})")));
        }
        // χ = c·log s with s = k − t² + x²
        let chi_tt = c * (-2.0 / s - 4.0 * t * t / (s * s));
        let chi_xx = c * (2.0 / s - 4.0 * x * x / (s * s));
        let chi = c * s.ln();
        let value = -chi_tt + chi_xx + 8.0 * (k / a) * (a * chi).exp();
        worst = worst.max(value.abs());
    }
    Ok(worst)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// B(p, q) = (p−1)!(q−1)!/(p+q−1)! for positive integers.
pub fn beta(p: u64, q: u64) -> Rational {
    assert!(p > 0 && q > 0, "Beta arguments must be positive");
    Rational::new(factorial(p - 1) * factorial(q - 1), factorial(p + q - 1))
}

/// Coefficients c_{n/2}, …, c₀ with c_r = C(n/2, r)·B(k + n/2 − 1 − r, n/2 + r + 1).
///
/// For a homogeneous seed p of degree k the ray-integral solution equals
/// Σ c_r·p·ρʳ.
pub fn beta_coefficients(n: usize, k: u32) -> Result<Vec<Rational>> {
    check_even(n)?;
    let half = (n / 2) as i64;
    let k = k as i64;
    (0..=half)
        .rev()
        .map(|r| {
            let p = k + half - 1 - r;
            if p <= 0 {
                return Err(Error::DivergentIntegral { r: r as usize, arg: p });
            }
            let binom = Rational::from_integer(binomial(half as u64, r as u64));
            Ok(binom * beta(p as u64, (half + r + 1) as u64))
        })
        .collect()
}

/// φ = Σ c_r·p·ρʳ built from [`beta_coefficients`].
pub fn integral_solution(seed: &Polynomial, k: u32) -> Result<RhoExpr> {
    let n = seed.dim();
    let coeffs = beta_coefficients(n, k)?;
    let half = n / 2;
    normalize(
        n,
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((half - i) as u32, seed.scale(c))),
    )
}
