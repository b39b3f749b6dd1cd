//! One function per subcommand. Results go to the configured output (or stdout),
//! short summaries to stdout, or to stderr when stdout carries the document.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singwave_core::doc::{parse_phi, BundleDoc, ExprDoc};
use singwave_core::inverse::relative_error;
use singwave_core::poly::coordinate_name;
use singwave_core::{
    build_phi, evolve_grid, fd_reference, recover_n2, recover_n4, residual, wave_basis, Field2D, InitialData,
    MinkowskiPoint, Polynomial, RayField,
};

use crate::config::{DataSource, Norm, Points, RunConfig, Task};
use crate::error::CliError;
use crate::io::{emit, num, read, read_table, write_table};

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let out = cfg.output.as_deref();
    match &cfg.task {
        Task::Basis { dim, degree } => cmd_basis(*dim, *degree, out),
        Task::Build { seed, index, dim } => cmd_build(seed, *index, *dim, out),
        Task::Verify { input } => cmd_verify(input),
        Task::Invert { .. } => cmd_invert(cfg),
        Task::Evolve { data, a, grid } => {
            let d = load_data(data, *a)?;
            emit(out, &evolve_grid(&d, grid, &cfg.quadrature)?.to_csv())
        }
        Task::Fdref { data, a, grid, cfl } => {
            let d = load_data(data, *a)?;
            emit(out, &fd_reference(&d, grid, *cfl)?.to_csv())
        }
        Task::Compare { left, right, norm, tol } => cmd_compare(left, right, *norm, *tol),
    }
}

/// Prints a summary line where it cannot collide with a document on stdout.
fn summary(out: Option<&Path>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

pub fn cmd_basis(dim: usize, degree: u32, out: Option<&Path>) -> Result<(), CliError> {
    let basis = wave_basis(dim, degree)?;
    let text: String = basis.elements.iter().map(|p| ExprDoc::from_polynomial(p).to_json() + "\n").collect();
    emit(out, &text)?;
    summary(out, &format!("elements: {}", basis.len()));
    Ok(())
}

fn read_seed(path: &Path, index: usize) -> Result<Polynomial, CliError> {
    let text = read(path)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let line = lines.get(index).ok_or_else(|| {
        CliError::Usage(format!("--index {index} out of range: {} has {} documents", path.display(), lines.len()))
    })?;
    Ok(ExprDoc::parse(line)?.to_polynomial()?)
}

pub fn cmd_build(seed: &Path, index: usize, dim: Option<usize>, out: Option<&Path>) -> Result<(), CliError> {
    let seed = read_seed(seed, index)?;
    let n = dim.unwrap_or(seed.dim());
    let bundle = build_phi(&seed, n)?;
    emit(out, &(BundleDoc::from_bundle(&bundle).to_json() + "\n"))?;
    summary(out, &format!("coefficients: {}", bundle.coefficients().len()));
    Ok(())
}

pub fn cmd_verify(input: &Path) -> Result<(), CliError> {
    let phi = parse_phi(&read(input)?)?;
    let r = residual(&phi, phi.dim());
    println!("residual: {r}");
    if r.is_zero() {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!("residual is not zero: {r}")))
    }
}

fn random_points(field: &RayField, count: usize, seed: u64) -> Vec<MinkowskiPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let c: Vec<f64> = (0..field.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // keep clear of the origin, where the sampled path cannot difference
        if field.in_domain(&c) && c.iter().map(|v| v * v).sum::<f64>() > 1e-4 {
            pts.push(MinkowskiPoint::new(c));
        }
    }
    pts
}

fn is_bundle(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text).is_ok_and(|v| v.get("coefficients").is_some())
}

pub fn cmd_invert(cfg: &RunConfig) -> Result<(), CliError> {
    let Task::Invert { input, points, delta, sampled, check } = &cfg.task else {
        unreachable!("cmd_invert called for {}", cfg.name());
    };
    let text = read(input)?;
    let phi = parse_phi(&text)?;
    let n = phi.dim();
    let bundle = if is_bundle(&text) { Some(BundleDoc::parse(&text)?) } else { None };
    let mut field = RayField::exact(phi).with_delta(*delta)?;
    if *sampled {
        field = field.to_sampled();
    }
    let names: Vec<String> = (0..n).map(|a| coordinate_name(n, a)).collect();
    let pts = match points {
        Points::File(p) => read_table(&read(p)?, &names)?.into_iter().map(MinkowskiPoint::new).collect(),
        Points::Random(count) => random_points(&field, *count, cfg.rng_seed),
    };

    let mut rows = Vec::with_capacity(pts.len());
    for x in &pts {
        let recovered = match n {
            2 => {
                let (p0, p1) = recover_n2(&field, x, &cfg.quadrature)?;
                vec![p0, p1]
            }
            _ => {
                let (p0, p1, p2) = recover_n4(&field, x, &cfg.quadrature)?;
                vec![p0, p1, p2]
            }
        };
        rows.push([x.coords.clone(), recovered].concat());
    }
    let mut header = names;
    header.extend((0..=n / 2).map(|r| format!("P{r}")));
    emit(cfg.output.as_deref(), &write_table(&header, &rows))?;

    if let Some(b) = bundle {
        // the document lists P_{n/2}, …, P₀
        let exact: Vec<Polynomial> =
            b.coefficients.iter().rev().map(ExprDoc::to_polynomial).collect::<singwave_core::Result<_>>()?;
        let mut worst = 0.0f64;
        for row in &rows {
            let (x, got) = row.split_at(n);
            for (p, &v) in exact.iter().zip(got) {
                worst = worst.max(relative_error(v, p.eval(x)));
            }
        }
        summary(cfg.output.as_deref(), &format!("max_rel_err: {}", num(worst)));
        if let Some(tol) = check {
            if !(worst < *tol) {
                return Err(CliError::Tolerance(format!("max relative error {} exceeds {}", num(worst), num(*tol))));
            }
        }
    } else if check.is_some() {
        return Err(CliError::Usage("--check needs a bundle document as input".into()));
    }
    Ok(())
}

fn load_data(src: &DataSource, a: f64) -> Result<InitialData, CliError> {
    match src {
        DataSource::Exact(p) => Ok(InitialData::from_exact(&parse_phi(&read(p)?)?, a)?),
        DataSource::Samples(p) => {
            let header = ["w", "u0", "v0"].map(String::from);
            let rows = read_table(&read(p)?, &header)?;
            let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<_>>();
            Ok(InitialData::from_samples(a, &col(0), &col(1), &col(2))?)
        }
    }
}

pub fn cmd_compare(left: &Path, right: &Path, norm: Norm, tol: f64) -> Result<(), CliError> {
    let l = Field2D::from_csv(&read(left)?)?;
    let r = Field2D::from_csv(&read(right)?)?;
    let d = l.diff(&r)?;
    let value = match norm {
        Norm::Max => d.max_abs(),
        Norm::Rms => d.rms(),
    };
    println!("norm: {}", num(value));
    if value <= tol {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!("norm {} exceeds --tol {}", num(value), num(tol))))
    }
}
