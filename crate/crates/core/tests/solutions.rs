mod common;

use common::*;
use proptest::prelude::*;
use singwave_core::rational::{frac, int};
use singwave_core::solution::{beta_coefficients, integral_solution, psi0_residual, recursion_step};
use singwave_core::{build_phi, is_wave_polynomial, residual, wave_basis, Polynomial, RhoExpr};

/// (n, r, scale, shift) with P_r = scale·(H + shift)P_{r+1}, as tabulated.
const RECURSION_TABLE: [(usize, usize, (i64, i64), i64); 10] = [
    (2, 0, (1, 2), -1),
    (4, 0, (1, 6), 0),
    (4, 1, (1, 2), -1),
    (6, 0, (1, 12), 1),
    (6, 1, (1, 5), 0),
    (6, 2, (1, 2), -1),
    (8, 0, (1, 20), 2),
    (8, 1, (1, 9), 1),
    (8, 2, (3, 14), 0),
    (8, 3, (1, 2), -1),
];

#[test]
fn every_basis_seed_gives_an_exact_solution() {
    for n in [2usize, 4, 6, 8] {
        for k in 0..=6 {
            for seed in &wave_basis(n, k).unwrap().elements {
                let b = build_phi(seed, n).unwrap();
                assert!(residual(b.phi(), n).is_zero(), "n={n} seed={seed}");
                assert_eq!(b.coefficients().len(), n / 2 + 1);
                assert!(b.coefficients().iter().all(is_wave_polynomial));
                // φ = Σ P_r ρʳ
                let mut sum = RhoExpr::zero(n);
                for r in 0..=n / 2 {
                    let term = &RhoExpr::from_polynomial(b.coefficient(r).clone()) * &RhoExpr::rho_pow(n, r as u32);
                    sum = &sum + &term;
                }
                assert_eq!(&sum, b.phi());
            }
        }
    }
}

#[test]
fn lemma_one_particular_solutions() {
    for n in [4, 6, 8] {
        assert!(psi0_residual(n).unwrap().is_zero());
    }
}

#[test]
fn beta_coefficients_obey_the_recursion() {
    for n in [2usize, 4, 6] {
        for k in 2..=6u32 {
            let c = beta_coefficients(n, k).unwrap();
            let half = n / 2;
            // c is ordered c_{n/2}, …, c₀
            for r in 0..half {
                let (ri, ni, ki) = (r as i64, n as i64, k as i64);
                let factor = frac(2 * (ri + 1) * (2 * ki + ni - 2 * ri - 4), (ni - 2 * ri) * (ni + 2 * ri + 2));
                assert_eq!(c[half - r], &factor * &c[half - r - 1], "n={n} k={k} r={r}");
            }
        }
    }
}

fn table_rhs(p: &Polynomial, scale: (i64, i64), shift: i64) -> Polynomial {
    let mut out = p.euler();
    out.add_scaled(p, &int(shift));
    out.scale(&frac(scale.0, scale.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recursion_matches_table(
        (row, p) in (0usize..10, 0u32..=5).prop_flat_map(|(row, d)| (Just(row), arb_homogeneous(RECURSION_TABLE[row].0, d)))
    ) {
        let (n, r, scale, shift) = RECURSION_TABLE[row];
        prop_assert_eq!(recursion_step(&p, n, r).unwrap(), table_rhs(&p, scale, shift));
    }

    #[test]
    fn combinations_of_seeds_solve(n in prop::sample::select(vec![2usize, 4, 6]), k in 0u32..=4, coeffs in proptest::collection::vec(arb_rational(), 20)) {
        let basis = wave_basis(n, k).unwrap();
        let mut seed = Polynomial::zero(n);
        for (e, c) in basis.elements.iter().zip(&coeffs) {
            seed.add_scaled(e, c);
        }
        let b = build_phi(&seed, n).unwrap();
        prop_assert!(residual(b.phi(), n).is_zero());
    }

    #[test]
    fn integral_form_is_a_multiple_of_the_recursion(n in prop::sample::select(vec![2usize, 4, 6]), k in 2u32..=5, pick in any::<prop::sample::Index>()) {
        let basis = wave_basis(n, k).unwrap();
        let seed = pick.get(&basis.elements);
        let integral = integral_solution(seed, k).unwrap();
        let top = beta_coefficients(n, k).unwrap()[0].clone();
        prop_assert_eq!(integral.clone(), build_phi(seed, n).unwrap().phi().scale(&top));
        prop_assert!(residual(&integral, n).is_zero());
    }

    #[test]
    fn non_wave_seeds_are_rejected(p in arb_homogeneous(4, 2)) {
        prop_assume!(!p.dalembertian().is_zero());
        prop_assert!(build_phi(&p, 4).is_err());
    }
}
