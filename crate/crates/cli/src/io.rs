//! File plumbing: atomic writes and the small versioned CSV tables.

use std::fs;
use std::io::Write;
use std::path::Path;

use singwave_core::field::CSV_VERSION_LINE;
use singwave_core::Error;

use crate::error::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Sends `contents` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

/// Seventeen significant digits, enough to reproduce any f64.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_table(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut s = format!("{CSV_VERSION_LINE}\n{}\n", header.join(","));
    for row in rows {
        s.push_str(&row.iter().map(|&v| num(v)).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

/// Parses a versioned table whose header must equal `header`.
pub fn read_table(text: &str, header: &[String]) -> Result<Vec<Vec<f64>>, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some(CSV_VERSION_LINE) {
        return Err(Error::Parse(format!("table must start with {CSV_VERSION_LINE:?}")));
    }
    let want = header.join(",");
    match lines.next() {
        Some(h) if h == want => {}
        h => return Err(Error::Parse(format!("expected header {want:?}, got {:?}", h.unwrap_or("")))),
    }
    lines
        .filter(|l| !l.starts_with('#'))
        .enumerate()
        .map(|(k, l)| {
            let row: Vec<f64> = l
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::Parse(format!("row {}: {e}", k + 1)))?;
            if row.len() != header.len() {
                return Err(Error::Parse(format!("row {} has {} fields, expected {}", k + 1, row.len(), header.len())));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Parse(format!("row {} has a non-finite value", k + 1)));
            }
            Ok(row)
        })
        .collect()
}
