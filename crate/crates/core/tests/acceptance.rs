//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singwave_core::cauchy::InitialData;
use singwave_core::hypergeo::fk_ode_residual;
use singwave_core::inverse::relative_error;
use singwave_core::poly::Monomial;
use singwave_core::rational::{frac, int};
use singwave_core::ring::normalize;
use singwave_core::solution::{beta_coefficients, check_n2_background, psi0_residual, recursion_step};
use singwave_core::{
    build_phi, evolve_grid, evolve_point, fd_reference, initial_condition_check, pde_residual_fd, recover_n2,
    recover_n4, residual, wave_basis, Field2D, Grid2D, MinkowskiPoint, Polynomial, QuadratureSpec, RayField,
    RhoExpr,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_solution_suite() -> Outcome {
    let mut seeds = 0;
    for n in [2usize, 4, 6, 8] {
        for k in 0..=6 {
            let basis = wave_basis(n, k).map_err(|e| e.to_string())?;
            for seed in &basis.elements {
                let b = build_phi(seed, n).map_err(|e| format!("n={n} k={k}: {e}"))?;
                let r = residual(b.phi(), n);
                ensure(r.is_zero(), || format!("n={n} seed {seed}: residual {r}"))?;
                seeds += 1;
            }
        }
    }
    Ok(format!("{seeds} basis seeds for n in {{2,4,6,8}}, k <= 6; every residual is the zero element"))
}

fn recursion_table() -> Outcome {
    const ROWS: [(usize, usize, (i64, i64), i64); 10] = [
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
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, r, (num, den), shift) in ROWS {
        for d in 0..=6 {
            let p = Polynomial::from_terms(
                n,
                Monomial::all_of_degree(n, d).into_iter().map(|m| (m, frac(rng.gen_range(-50..=50), rng.gen_range(1..=9)))),
            );
            let mut expected = p.euler();
            expected.add_scaled(&p, &int(shift));
            let expected = expected.scale(&frac(num, den));
            let got = recursion_step(&p, n, r).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("n={n} r={r} degree {d}"))?;
        }
    }
    Ok("10 relations match on generic homogeneous inputs of degree 0..6".into())
}

fn lemma_one() -> Outcome {
    for n in [4, 6, 8] {
        let r = psi0_residual(n).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("psi0 residual for n={n} is {r}"))?;
    }
    let mut worst = 0.0f64;
    for (k, a) in [(1.0, 1.0), (1.0, -3.0), (2.0, 1.0)] {
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64 * 10 + a as u64);
        let mut pts = vec![MinkowskiPoint::origin(2)];
        while pts.len() < 25 {
            let p = MinkowskiPoint::new(vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)]);
            if k + p.minkowski_norm_sq() >= 0.1 {
                pts.push(p);
            }
        }
        let m = check_n2_background(k, a, &pts).map_err(|e| e.to_string())?;
        ensure(m < 1e-9, || format!("(k,a)=({k},{a}): residual {m:e}"))?;
        worst = worst.max(m);
    }
    Ok(format!("psi0 residual zero for n in {{4,6,8}}; n=2 background max residual {worst:.3e} < 1e-9"))
}

fn random_rho_expr(rng: &mut ChaCha8Rng, dim: usize) -> RhoExpr {
    let mut layers = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let s = rng.gen_range(0..=4u32);
        let mut p = Polynomial::zero(dim);
        for _ in 0..rng.gen_range(1..=4) {
            let d = rng.gen_range(0..=6u32);
            let monos = Monomial::all_of_degree(dim, d);
            let m = monos[rng.gen_range(0..monos.len())].clone();
            p.add_term(m, frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        }
        layers.push((s, p));
    }
    normalize(dim, layers).expect("consistent dimensions")
}

fn commutator() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let dim = [2, 3, 4][i % 3];
        let e = random_rho_expr(&mut rng, dim);
        let lhs = &e.euler_h().dalembertian() - &e.dalembertian().euler_h();
        let rhs = e.dalembertian().scale(&int(2));
        ensure(lhs == rhs, || format!("case {i}: {e}"))?;
    }
    Ok("[box, H] = 2 box exactly on 100 random ring elements".into())
}

fn hypergeometric() -> Outcome {
    for n in [2usize, 4, 6] {
        for k in 2..=5u32 {
            let r = fk_ode_residual(n, k).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || format!("ODE residual n={n} k={k}: {r}"))?;
            let c = beta_coefficients(n, k).map_err(|e| e.to_string())?;
            let half = n / 2;
            for r in 0..half {
                let (ri, ni, ki) = (r as i64, n as i64, k as i64);
                let f = frac(2 * (ri + 1) * (2 * ki + ni - 2 * ri - 4), (ni - 2 * ri) * (ni + 2 * ri + 2));
                ensure(c[half - r] == &f * &c[half - r - 1], || format!("Beta identity n={n} k={k} r={r}"))?;
            }
        }
    }
    Ok("radial ODE residual and Beta/recursion identity exact for n in {2,4,6}, k in 2..5".into())
}

fn admissible_points(dim: usize, count: usize, seed: u64) -> Vec<MinkowskiPoint> {
    let probe = RayField::exact(RhoExpr::zero(dim));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if probe.in_domain(&c) && c.iter().map(|v| v * v).sum::<f64>() > 1e-4 {
            out.push(MinkowskiPoint::new(c));
        }
    }
    out
}

fn inversion() -> Outcome {
    let q = QuadratureSpec::new(64, 200, 1e-12).map_err(|e| e.to_string())?;
    let mono = |e: &[u16]| Polynomial::monomial(e, int(1));
    let seeds2 = [&mono(&[2, 0]) + &mono(&[0, 2]), mono(&[0, 1])];
    let seeds4 = [mono(&[1, 1, 0, 0]), mono(&[0, 1, 1, 0])];
    let mut worst = 0.0f64;
    for seed in &seeds2 {
        let b = build_phi(seed, 2).map_err(|e| e.to_string())?;
        let field = RayField::exact(b.phi().clone());
        for x in admissible_points(2, 20, 6) {
            let (p0, p1) = recover_n2(&field, &x, &q).map_err(|e| e.to_string())?;
            for (r, v) in [p0, p1].into_iter().enumerate() {
                let err = relative_error(v, b.coefficient(r).eval(&x.coords));
                ensure(err < 1e-8, || format!("n=2 seed {seed} P{r} at {:?}: rel err {err:e}", x.coords))?;
                worst = worst.max(err);
            }
        }
    }
    for seed in &seeds4 {
        let b = build_phi(seed, 4).map_err(|e| e.to_string())?;
        let field = RayField::exact(b.phi().clone());
        for x in admissible_points(4, 20, 8) {
            let (p0, p1, p2) = recover_n4(&field, &x, &q).map_err(|e| e.to_string())?;
            for (r, v) in [p0, p1, p2].into_iter().enumerate() {
                let err = relative_error(v, b.coefficient(r).eval(&x.coords));
                ensure(err < 1e-8, || format!("n=4 seed {seed} P{r} at {:?}: rel err {err:e}", x.coords))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("n=2 and n=4 round trips at 20 points per seed, max rel err {worst:.3e} < 1e-8"))
}

fn cauchy_exactness() -> Outcome {
    let phi = &RhoExpr::var(2, 1) * &RhoExpr::rho(2);
    let d = InitialData::from_exact(&phi, 0.0).map_err(|e| e.to_string())?;
    let g = Grid2D::parse("-1,1,101:0,0.5,51").map_err(|e| e.to_string())?;
    let q = QuadratureSpec::default();
    let f = evolve_grid(&d, &g, &q).map_err(|e| e.to_string())?;
    let exact = Field2D::from_fn(g, |x, t| Ok(x / (1.0 + x * x - t * t))).map_err(|e| e.to_string())?;
    let err = f.diff(&exact).map_err(|e| e.to_string())?.max_abs();
    ensure(err < 1e-8, || format!("max abs error {err:e}"))?;
    let xs: Vec<f64> = (0..101).map(|i| g.x(i)).collect();
    let (p, v) = initial_condition_check(&d, &xs, &q).map_err(|e| e.to_string())?;
    ensure(p < 1e-6 && v < 1e-6, || format!("initial condition maxima {p:e}, {v:e}"))?;
    Ok(format!("101x51 grid max abs error {err:.3e} < 1e-8; initial checks {p:.1e}, {v:.3e} < 1e-6"))
}

fn bump(w: f64) -> f64 {
    (-8.0 * w * w).exp()
}

fn oracle_agreement() -> Outcome {
    let d = InitialData::from_functions(0.0, bump, |_| 0.0).map_err(|e| e.to_string())?;
    let q = QuadratureSpec::default();
    let g = Grid2D::parse("-1,1,21:0,0.5,11").map_err(|e| e.to_string())?;
    let kernel = evolve_grid(&d, &g, &q).map_err(|e| e.to_string())?;
    let mut errors = Vec::new();
    let mut fine = g;
    for level in 1..=4u32 {
        fine = fine.refined();
        let fd = fd_reference(&d, &fine, 0.5).map_err(|e| e.to_string())?;
        let coarse = fd.subsample(1 << level).map_err(|e| e.to_string())?;
        errors.push(coarse.diff(&kernel).map_err(|e| e.to_string())?.max_abs());
    }
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    ensure(ratios.iter().all(|r| (3.5..=4.5).contains(r)), || format!("FD error ratios {ratios:?}"))?;

    let base = Grid2D::parse("-0.6,0.6,7:0.1,0.4,4").map_err(|e| e.to_string())?;
    let mut residuals = Vec::new();
    let mut fine = base;
    for level in 1..=4u32 {
        fine = fine.refined();
        let r = pde_residual_fd(&evolve_grid(&d, &fine, &q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let step = 1usize << level;
        let mut worst = 0.0f64;
        for j in 1..base.nt - 1 {
            for i in 1..base.nx - 1 {
                worst = worst.max(r.get(i * step - 1, j * step - 1).abs());
            }
        }
        residuals.push(worst);
    }
    let rr: Vec<f64> = residuals.windows(2).map(|w| w[0] / w[1]).collect();
    ensure(rr.iter().all(|r| (3.5..=4.5).contains(r)), || format!("residual ratios {rr:?}"))?;
    let fmt = |v: &[f64]| v.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(", ");
    Ok(format!("FD error ratios [{}]; residual ratios [{}]", fmt(&ratios), fmt(&rr)))
}

fn causality() -> Outcome {
    let q = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = InitialData::from_functions(0.0, |w| bump(w - 0.1), |w| 0.3 * bump(w)).map_err(|e| e.to_string())?;
    let probes = 30;
    for _ in 0..probes {
        let x = rng.gen_range(-1.0..1.0);
        let t = rng.gen_range(0.01..0.5);
        let (lo, hi) = (x - t, x + t);
        let amp = rng.gen_range(-3.0..3.0);
        let outside = move |w: f64| if w < lo || w > hi { amp * (1.0 + (5.0 * w).cos()) } else { 0.0 };
        let perturbed =
            InitialData::from_functions(0.0, move |w| bump(w - 0.1) + outside(w), move |w| 0.3 * bump(w) - outside(w))
                .map_err(|e| e.to_string())?;
        let v0 = evolve_point(&base, x, t, &q).map_err(|e| e.to_string())?;
        let v1 = evolve_point(&perturbed, x, t, &q).map_err(|e| e.to_string())?;
        ensure(v0.to_bits() == v1.to_bits(), || format!("probe ({x}, {t}): {v0} vs {v1}"))?;
    }
    Ok(format!("{probes} probes bitwise unchanged by data outside the light cone"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("exact solution suite", exact_solution_suite),
        ("recursion table reproduction", recursion_table),
        ("particular solutions and n=2 background", lemma_one),
        ("commutator law", commutator),
        ("hypergeometric ODE and Beta identity", hypergeometric),
        ("inversion round trip", inversion),
        ("Cauchy exactness", cauchy_exactness),
        ("oracle agreement", oracle_agreement),
        ("causality", causality),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
