use proptest::prelude::*;
use singwave_core::cauchy::{check_grid, InitialData};
use singwave_core::{evolve_grid, evolve_point, fd_reference, initial_condition_check, pde_residual_fd};
use singwave_core::{Field2D, Grid2D, QuadratureSpec, RhoExpr};

fn bump(w: f64) -> f64 {
    (-8.0 * w * w).exp()
}

fn data_sets() -> Vec<(&'static str, InitialData)> {
    vec![
        ("bump", InitialData::from_functions(0.0, bump, |_| 0.0).unwrap()),
        ("moving bump", InitialData::from_functions(0.1, |w| bump(w - 0.2), |w| 16.0 * (w - 0.2) * bump(w - 0.2)).unwrap()),
        ("mixed", InitialData::from_functions(0.0, |w| (2.0 * w).sin() * bump(0.5 * w), |w| 0.5 * bump(w + 0.3)).unwrap()),
        ("exact", InitialData::from_exact(&(&RhoExpr::var(2, 1) * &RhoExpr::rho(2)), 0.0).unwrap()),
    ]
}

fn coarse(a: f64) -> Grid2D {
    Grid2D::new(-1.0, 1.0, 21, a, a + 0.5, 11).unwrap()
}

/// The FD grid refined `level` times, sharing every node of the coarse grid.
fn fine(g: &Grid2D, level: u32) -> Grid2D {
    (0..level).fold(*g, |g, _| g.refined())
}

/// Max |FD − kernel| on the coarse grid for FD refinement levels 1..=4.
fn oracle_errors(d: &InitialData) -> Vec<f64> {
    let q = QuadratureSpec::default();
    let g = coarse(d.a);
    let kernel = evolve_grid(d, &g, &q).unwrap();
    (1..=4)
        .map(|level| {
            let fd = fd_reference(d, &fine(&g, level), 0.5).unwrap();
            fd.subsample(1 << level).unwrap().diff(&kernel).unwrap().max_abs()
        })
        .collect()
}

#[test]
fn finite_differences_converge_to_the_kernel_at_second_order() {
    for (name, d) in data_sets() {
        let e = oracle_errors(&d);
        let ratios: Vec<f64> = e.windows(2).map(|w| w[0] / w[1]).collect();
        for r in &ratios {
            assert!((3.5..=4.5).contains(r), "{name}: ratios {ratios:?}");
        }
    }
}

/// Max interior residual, sampled at the interior nodes of the coarsest grid.
fn residual_on_common_nodes(d: &InitialData, base: &Grid2D, level: u32) -> f64 {
    let q = QuadratureSpec::default();
    let g = fine(base, level);
    let r = pde_residual_fd(&evolve_grid(d, &g, &q).unwrap()).unwrap();
    let step = 1usize << level;
    let mut worst = 0.0f64;
    for j in 1..base.nt - 1 {
        for i in 1..base.nx - 1 {
            worst = worst.max(r.get(i * step - 1, j * step - 1).abs());
        }
    }
    worst
}

#[test]
fn kernel_output_satisfies_the_equation_at_second_order() {
    for (name, d) in data_sets() {
        let base = Grid2D::new(-0.6, 0.6, 7, d.a + 0.1, d.a + 0.4, 4).unwrap();
        let res: Vec<f64> = (1..=4).map(|l| residual_on_common_nodes(&d, &base, l)).collect();
        let ratios: Vec<f64> = res.windows(2).map(|w| w[0] / w[1]).collect();
        for r in &ratios {
            assert!((3.5..=4.5).contains(r), "{name}: residuals {res:?} ratios {ratios:?}");
        }
    }
}

#[test]
fn sampled_exact_solution_has_second_order_residual() {
    let base = Grid2D::new(-1.0, 1.0, 9, 0.0, 0.5, 5).unwrap();
    let res: Vec<f64> = (0..4)
        .map(|l| {
            let g = fine(&base, l);
            let f = Field2D::from_fn(g, |x, t| Ok(x / (1.0 + x * x - t * t))).unwrap();
            let r = pde_residual_fd(&f).unwrap();
            let step = 1usize << l;
            (1..base.nt - 1)
                .flat_map(|j| (1..base.nx - 1).map(move |i| (i, j)))
                .map(|(i, j)| r.get(i * step - 1, j * step - 1).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    for w in res.windows(2) {
        assert!((3.5..=4.5).contains(&(w[0] / w[1])), "{res:?}");
    }
}

#[test]
fn exact_data_is_reproduced_on_the_acceptance_grid() {
    let phi = &RhoExpr::var(2, 1) * &RhoExpr::rho(2);
    let d = InitialData::from_exact(&phi, 0.0).unwrap();
    let g = Grid2D::parse("-1,1,101:0,0.5,51").unwrap();
    let q = QuadratureSpec::default();
    let f = evolve_grid(&d, &g, &q).unwrap();
    let exact = Field2D::from_fn(g, |x, t| Ok(x / (1.0 + x * x - t * t))).unwrap();
    assert!(f.diff(&exact).unwrap().max_abs() < 1e-8);
    let xs: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    let (p, v) = initial_condition_check(&d, &xs, &q).unwrap();
    assert!(p < 1e-6 && v < 1e-6, "{p} {v}");
}

#[test]
fn bump_initial_conditions_are_met() {
    let d = InitialData::from_functions(0.0, bump, |_| 0.0).unwrap();
    let q = QuadratureSpec::default();
    let xs: Vec<f64> = (0..21).map(|i| -1.0 + 0.1 * i as f64).collect();
    let (p, v) = initial_condition_check(&d, &xs, &q).unwrap();
    assert!(p < 1e-10, "{p}");
    assert!(v < 1e-6, "{v}");
    let zero = InitialData::zero(0.0);
    assert_eq!(initial_condition_check(&zero, &xs, &q).unwrap(), (0.0, 0.0));
}

#[test]
fn tabulated_data_follow_the_exact_solution() {
    let ws: Vec<f64> = (0..=400).map(|i| -2.0 + 0.01 * i as f64).collect();
    let u: Vec<f64> = ws.iter().map(|w| w / (1.0 + w * w)).collect();
    let v = vec![0.0; ws.len()];
    let d = InitialData::from_samples(0.0, &ws, &u, &v).unwrap();
    let q = QuadratureSpec::default();
    for (x, t) in [(0.3, 0.4), (-0.5, 0.25), (0.9, 0.5)] {
        let got = evolve_point(&d, x, t, &q).unwrap();
        assert!((got - x / (1.0 + x * x - t * t)).abs() < 1e-6, "{got}");
    }
}

#[test]
fn grids_touching_the_singular_set_are_rejected() {
    // the last row sits at 1 + x² − t² = ε/2 for x = 0
    let t = (1.0 - singwave_core::cauchy::EPS_SING / 2.0f64).sqrt();
    let g = Grid2D::new(-0.5, 0.5, 3, 0.0, t, 3).unwrap();
    let err = check_grid(&g).unwrap_err();
    match err {
        singwave_core::Error::SingularRegion { x, t: tt, .. } => assert_eq!((x, tt), (0.0, t)),
        e => panic!("unexpected {e}"),
    }
    let d = InitialData::zero(0.0);
    assert!(evolve_grid(&d, &g, &QuadratureSpec::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn data_outside_the_light_cone_is_ignored(
        x in -1.0f64..1.0,
        tau in 0.01f64..0.5,
        amp in -3.0f64..3.0,
        freq in 0.5f64..6.0,
    ) {
        let a = 0.0;
        let t = a + tau;
        let (lo, hi) = (x - tau, x + tau);
        let base = InitialData::from_functions(a, |w| bump(w - 0.1), |w| 0.3 * bump(w)).unwrap();
        let outside = move |w: f64| if w < lo || w > hi { amp * (freq * w).sin() + amp } else { 0.0 };
        let perturbed = InitialData::from_functions(
            a,
            move |w| bump(w - 0.1) + outside(w),
            move |w| 0.3 * bump(w) - 2.0 * outside(w),
        ).unwrap();
        let q = QuadratureSpec::default();
        let v0 = evolve_point(&base, x, t, &q).unwrap();
        let v1 = evolve_point(&perturbed, x, t, &q).unwrap();
        prop_assert_eq!(v0.to_bits(), v1.to_bits());
    }

    #[test]
    fn evolution_is_deterministic(x in -1.0f64..1.0, t in 0.0f64..0.5) {
        let d = InitialData::from_functions(0.0, bump, |w| w * bump(w)).unwrap();
        let q = QuadratureSpec::default();
        prop_assert_eq!(evolve_point(&d, x, t, &q).unwrap().to_bits(), evolve_point(&d, x, t, &q).unwrap().to_bits());
    }
}
