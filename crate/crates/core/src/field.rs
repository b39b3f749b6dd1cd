//! Uniform (x, t) grids and sampled fields, with a plain CSV representation.
//!
//! ```text
//! # format_version: 1
//! x,t,value
//! -1.0000000000000000e0,0.0000000000000000e0,-5.0000000000000000e-1
//! ```
//!
//! Rows run over x fastest, then t.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "x,t,value";
pub const CSV_VERSION_LINE: &str = "# format_version: 1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub nt: usize,
}

impl Grid2D {
    pub fn new(x_min: f64, x_max: f64, nx: usize, t_min: f64, t_max: f64, nt: usize) -> Result<Self> {
        let g = Grid2D { x_min, x_max, nx, t_min, t_max, nt };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.nt < 2 {
            return Err(Error::BadGrid(format!("need nx, nt ≥ 2, got {}×{}", self.nx, self.nt)));
        }
        let vals = [self.x_min, self.x_max, self.t_min, self.t_max];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadGrid("non-finite bound".into()));
        }
        if self.x_max <= self.x_min || self.t_max <= self.t_min {
            return Err(Error::BadGrid("bounds must be increasing".into()));
        }
        Ok(())
    }

    /// Parses `x0,x1,nx:t0,t1,nt`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("grid {s:?} is not of the form x0,x1,nx:t0,t1,nt"));
        let (xs, ts) = s.split_once(':').ok_or_else(bad)?;
        let axis = |part: &str| -> Result<(f64, f64, usize)> {
            let f: Vec<&str> = part.split(',').map(str::trim).collect();
            if f.len() != 3 {
                return Err(bad());
            }
            Ok((
                f[0].parse().map_err(|_| bad())?,
                f[1].parse().map_err(|_| bad())?,
                f[2].parse().map_err(|_| bad())?,
            ))
        };
        let (x0, x1, nx) = axis(xs)?;
        let (t0, t1, nt) = axis(ts)?;
        Grid2D::new(x0, x1, nx, t0, t1, nt)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / (self.nt - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx()
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        if j + 1 == self.nt {
            self.t_max
        } else {
            self.t_min + j as f64 * self.dt()
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (i, j, x, t) for every node, x fastest.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.nt).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.x(i), self.t(j))))
    }

    /// The grid with every interval split in two.
    pub fn refined(&self) -> Grid2D {
        Grid2D { nx: 2 * self.nx - 1, nt: 2 * self.nt - 1, ..*self }
    }

    /// Interior nodes only (one layer stripped on every side).
    pub fn interior(&self) -> Result<Grid2D> {
        Grid2D::new(
            self.x(1),
            self.x(self.nx - 2),
            self.nx - 2,
            self.t(1),
            self.t(self.nt - 2),
            self.nt - 2,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    grid: Grid2D,
    values: Vec<f64>,
}

impl Field2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.len() {
            return Err(Error::BadGrid(format!("{} values for a {}×{} grid", values.len(), grid.nx, grid.nt)));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite value at node (x, t) = ({}, {})",
                grid.x(k % grid.nx),
                grid.t(k / grid.nx)
            )));
        }
        Ok(Field2D { grid, values })
    }

    pub fn from_fn(grid: Grid2D, mut f: impl FnMut(f64, f64) -> Result<f64>) -> Result<Self> {
        let values = grid.nodes().map(|(_, _, x, t)| f(x, t)).collect::<Result<Vec<_>>>()?;
        Field2D::new(grid, values)
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nx + i]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Root mean square over all nodes.
    pub fn rms(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    /// Pointwise difference; the grids must coincide exactly.
    pub fn diff(&self, other: &Field2D) -> Result<Field2D> {
        if self.grid != other.grid {
            return Err(Error::BadGrid("fields live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Field2D { grid: self.grid, values })
    }

    /// Samples every `stride`-th node in both directions.
    pub fn subsample(&self, stride: usize) -> Result<Field2D> {
        let g = &self.grid;
        if stride == 0 || (g.nx - 1) % stride != 0 || (g.nt - 1) % stride != 0 {
            return Err(Error::BadGrid(format!("stride {stride} does not divide the grid")));
        }
        let grid = Grid2D { nx: (g.nx - 1) / stride + 1, nt: (g.nt - 1) / stride + 1, ..*g };
        let values = grid.nodes().map(|(i, j, _, _)| self.get(i * stride, j * stride)).collect();
        Ok(Field2D { grid, values })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * self.values.len());
        out.push_str(CSV_VERSION_LINE);
        out.push('\n');
        out.push_str(CSV_HEADER);
        out.push('\n');
        for ((_, _, x, t), v) in self.grid.nodes().zip(&self.values) {
            writeln!(out, "{x:.16e},{t:.16e},{v:.16e}").expect("writing to a string");
        }
        out
    }

    /// Reads the CSV form back, reconstructing the grid from the node coordinates.
    pub fn from_csv(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut version_seen = false;
        let header = loop {
            match lines.next() {
                None => return Err(Error::Parse("empty field file".into())),
                Some(l) if l.starts_with('#') => {
                    if let Some(v) = l.trim_start_matches('#').trim().strip_prefix("format_version:") {
                        if v.trim() != "1" {
                            return Err(Error::Parse(format!("unsupported format_version {}", v.trim())));
                        }
                        version_seen = true;
                    }
                }
                Some(l) => break l,
            }
        };
        if !version_seen {
            return Err(Error::Parse("missing format_version line".into()));
        }
        if header != CSV_HEADER {
            return Err(Error::Parse(format!("expected header {CSV_HEADER:?}, got {header:?}")));
        }
        let mut rows = Vec::new();
        for (k, line) in lines.enumerate() {
            if line.starts_with('#') {
                continue;
            }
            let f: Vec<f64> = line
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("row {}: {e}", k + 1)))?;
            if f.len() != 3 {
                return Err(Error::Parse(format!("row {} has {} fields", k + 1, f.len())));
            }
            rows.push((f[0], f[1], f[2]));
        }
        let nx = rows.iter().take_while(|r| r.1 == rows[0].1).count();
        if nx < 2 || rows.len() % nx != 0 {
            return Err(Error::Parse("rows do not form a rectangular grid".into()));
        }
        let nt = rows.len() / nx;
        let grid = Grid2D::new(rows[0].0, rows[nx - 1].0, nx, rows[0].1, rows[rows.len() - 1].1, nt)
            .map_err(|e| Error::Parse(e.to_string()))?;
        let tol = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
        for ((_, _, x, t), r) in grid.nodes().zip(&rows) {
            if !tol(x, r.0) || !tol(t, r.1) {
                return Err(Error::Parse(format!("node ({}, {}) is off the uniform grid", r.0, r.1)));
            }
        }
        Field2D::new(grid, rows.into_iter().map(|r| r.2).collect())
    }
}
