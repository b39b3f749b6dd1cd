//! Command-line surface and its resolution into a [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use singwave_core::{Grid2D, QuadratureSpec};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "singwave", version, about = "Exact solutions of the wave equation with the n(n+2)/(1+x·x)² potential")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a basis of homogeneous wave polynomials, one document per line.
    Basis {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        dim: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the full solution bundle from a seed polynomial.
    Build {
        /// Seed document; a basis file is accepted, see --index.
        #[arg(long)]
        seed: PathBuf,
        /// Line of the seed file to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Spacetime dimension; defaults to the seed's.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        dim: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that an expression or bundle solves the equation exactly.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Recover the coefficients P_r from φ along rays (n = 2 or 4).
    Invert {
        #[arg(long)]
        input: PathBuf,
        /// CSV of evaluation points; without it, random admissible points are drawn.
        #[arg(long, conflicts_with = "count")]
        points: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = singwave_core::inverse::DEFAULT_DELTA)]
        delta: f64,
        /// Evaluate φ as a black box, with finite-difference Euler derivatives.
        #[arg(long)]
        sampled: bool,
        /// Fail unless the relative error against the bundle stays below this.
        #[arg(long)]
        check: Option<f64>,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve Cauchy data with the closed-form kernel.
    Evolve {
        #[command(flatten)]
        data: DataArgs,
        /// Initial time.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve Cauchy data with the leapfrog finite-difference reference.
    Fdref {
        #[command(flatten)]
        data: DataArgs,
        /// Initial time.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 0.5)]
        cfl: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two field files on the same grid.
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Norm::Max)]
        norm: Norm,
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 64)]
    pub order: usize,
    #[arg(long, default_value_t = 200)]
    pub max_subdivisions: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DataArgs {
    /// Exact two-dimensional expression; data are its position and velocity at t = a.
    #[arg(long)]
    pub phi: Option<PathBuf>,
    /// CSV with columns w,u0,v0, interpolated by cubic splines.
    #[arg(long)]
    pub samples: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    Max,
    Rms,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DataSource {
    Exact(PathBuf),
    Samples(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Points {
    File(PathBuf),
    Random(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    Basis { dim: usize, degree: u32 },
    Build { seed: PathBuf, index: usize, dim: Option<usize> },
    Verify { input: PathBuf },
    Invert { input: PathBuf, points: Points, delta: f64, sampled: bool, check: Option<f64> },
    Evolve { data: DataSource, a: f64, grid: Grid2D },
    Fdref { data: DataSource, a: f64, grid: Grid2D, cfl: f64 },
    Compare { left: PathBuf, right: PathBuf, norm: Norm, tol: f64 },
}

/// A fully resolved invocation: every path is absolute and every input exists.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub output: Option<PathBuf>,
    pub quadrature: QuadratureSpec,
    pub rng_seed: u64,
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self.task {
            Task::Basis { .. } => "basis",
            Task::Build { .. } => "build",
            Task::Verify { .. } => "verify",
            Task::Invert { .. } => "invert",
            Task::Evolve { .. } => "evolve",
            Task::Fdref { .. } => "fdref",
            Task::Compare { .. } => "compare",
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let mut quadrature = QuadratureSpec::default();
        let mut rng_seed = 0;
        let (task, out) = match cli.command {
            Command::Basis { dim, degree, out } => (Task::Basis { dim: dim as usize, degree }, out),
            Command::Build { seed, index, dim, out } => {
                (Task::Build { seed: input_path(&seed)?, index, dim: dim.map(|d| d as usize) }, out)
            }
            Command::Verify { input } => (Task::Verify { input: input_path(&input)? }, None),
            Command::Invert { input, points, count, delta, sampled, check, quad, rng_seed: s, out } => {
                quadrature = quad.resolve()?;
                rng_seed = s;
                let points = match points {
                    Some(p) => Points::File(input_path(&p)?),
                    None => Points::Random(count),
                };
                if let Some(c) = check {
                    positive("--check", c)?;
                }
                (Task::Invert { input: input_path(&input)?, points, delta, sampled, check }, out)
            }
            Command::Evolve { data, a, grid, quad, out } => {
                quadrature = quad.resolve()?;
                (Task::Evolve { data: data.resolve()?, a, grid: parse_grid(&grid)? }, out)
            }
            Command::Fdref { data, a, grid, cfl, out } => {
                (Task::Fdref { data: data.resolve()?, a, grid: parse_grid(&grid)?, cfl }, out)
            }
            Command::Compare { left, right, norm, tol } => {
                if !(tol >= 0.0) {
                    return Err(CliError::Usage(format!("--tol must be non-negative, got {tol}")));
                }
                (Task::Compare { left: input_path(&left)?, right: input_path(&right)?, norm, tol }, None)
            }
        };
        let output = out.map(|p| output_path(&p)).transpose()?;
        Ok(RunConfig { task, output, quadrature, rng_seed })
    }
}

impl QuadArgs {
    fn resolve(&self) -> Result<QuadratureSpec, CliError> {
        QuadratureSpec::new(self.order, self.max_subdivisions, self.abs_tol).map_err(|e| CliError::Usage(e.to_string()))
    }
}

impl DataArgs {
    fn resolve(&self) -> Result<DataSource, CliError> {
        match (&self.phi, &self.samples) {
            (Some(p), None) => Ok(DataSource::Exact(input_path(p)?)),
            (None, Some(p)) => Ok(DataSource::Samples(input_path(p)?)),
            _ => Err(CliError::Usage("exactly one of --phi, --samples is required".into())),
        }
    }
}

fn positive(flag: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{flag} must be positive, got {v}")))
    }
}

fn parse_grid(s: &str) -> Result<Grid2D, CliError> {
    Grid2D::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn input_path(p: &Path) -> Result<PathBuf, CliError> {
    p.canonicalize().map_err(|e| CliError::Usage(format!("input {}: {e}", p.display())))
}

fn output_path(p: &Path) -> Result<PathBuf, CliError> {
    let name = p.file_name().ok_or_else(|| CliError::Usage(format!("output {} has no file name", p.display())))?;
    let parent = match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let dir = parent.canonicalize().map_err(|e| CliError::Usage(format!("output directory {}: {e}", parent.display())))?;
    Ok(dir.join(name))
}
