//! Shared inputs for the benchmarks.

use singwave_core::cauchy::InitialData;
use singwave_core::{build_phi, wave_basis, Polynomial, RhoExpr};

/// Basis seed `index` of the given dimension and degree.
pub fn seed(dim: usize, degree: u32, index: usize) -> Polynomial {
    wave_basis(dim, degree).expect("supported degree").elements[index].clone()
}

/// φ built from the first basis seed.
pub fn phi(dim: usize, degree: u32) -> RhoExpr {
    build_phi(&seed(dim, degree, 0), dim).expect("seed solves the wave equation").phi().clone()
}

/// A Gaussian bump at rest, centred slightly off the origin.
pub fn bump_data() -> InitialData {
    InitialData::from_functions(0.0, |w| (-8.0 * (w - 0.1) * (w - 0.1)).exp(), |_| 0.0).expect("finite initial time")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(seed(4, 2, 0).degree(), Some(2));
        assert!(!phi(2, 3).is_zero());
        assert_eq!(bump_data().a, 0.0);
    }
}
