//! CSV ingestion and export of sequence windows.
//!
//! Single windows: one point per line, `v1,...,vk`. Double windows:
//! `n,m,v1,...,vk` with the index pairs forming a complete square `[1,M]^2`.

use super::{Scale, SequenceWindow};
use crate::error::{Error, Result};
use crate::scalar::Real;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// Read a window from a CSV file. `dim` is the point dimension; the row shape
/// decides whether the file holds a single or a double sequence.
pub fn ingest_csv<T: Real>(path: impl AsRef<Path>, dim: usize) -> Result<SequenceWindow<T>> {
    let path = path.as_ref();
    let display = path.display().to_string();
    if dim == 0 {
        return Err(Error::parameter("dim", "must be at least 1"));
    }
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);

    let mut single_points: Vec<f64> = Vec::new();
    let mut double_points: Vec<(usize, usize, Vec<f64>)> = Vec::new();
    let mut shape: Option<bool> = None; // true = double

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let err = |reason: String| Error::Csv {
            path: display.clone(),
            line: lineno,
            reason,
        };
        let is_double = match fields.len() {
            l if l == dim => false,
            l if l == dim + 2 => true,
            l => {
                return Err(err(format!(
                    "expected {dim} fields (single) or {} (double), got {l}",
                    dim + 2
                )))
            }
        };
        match shape {
            None => shape = Some(is_double),
            Some(prev) if prev != is_double => {
                return Err(err("mixed single and double rows".to_string()))
            }
            _ => {}
        }

        let parse_coord = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| err(format!("`{s}` is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("non-finite value `{s}`")));
            }
            Ok(v)
        };

        if is_double {
            let n: usize = fields[0]
                .parse()
                .map_err(|_| err(format!("`{}` is not an index", fields[0])))?;
            let m: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("`{}` is not an index", fields[1])))?;
            if n == 0 || m == 0 {
                return Err(err("indices are 1-based".to_string()));
            }
            let coords: Result<Vec<f64>> = fields[2..].iter().map(|s| parse_coord(s)).collect();
            double_points.push((n, m, coords?));
        } else {
            for s in &fields {
                single_points.push(parse_coord(s)?);
            }
        }
    }

    match shape {
        None => Err(Error::EmptyInput { what: "csv file" }),
        Some(false) => {
            let n = single_points.len() / dim;
            SequenceWindow::new(
                dim,
                Scale::Single { n },
                single_points.into_iter().map(T::of_f64).collect(),
                display,
            )
        }
        Some(true) => {
            let m = double_points
                .iter()
                .map(|&(n, k, _)| n.max(k))
                .max()
                .unwrap();
            if double_points.len() != m * m {
                return Err(Error::IncompleteWindow {
                    reason: format!(
                        "need {} rows for the square [1,{m}]^2, got {}",
                        m * m,
                        double_points.len()
                    ),
                });
            }
            let mut values = vec![f64::NAN; dim * m * m];
            let mut seen = vec![false; m * m];
            for (n, k, coords) in double_points {
                let pos = (n - 1) * m + (k - 1);
                if seen[pos] {
                    return Err(Error::IncompleteWindow {
                        reason: format!("duplicate index ({n},{k})"),
                    });
                }
                seen[pos] = true;
                values[pos * dim..(pos + 1) * dim].copy_from_slice(&coords);
            }
            if let Some(pos) = seen.iter().position(|&s| !s) {
                return Err(Error::IncompleteWindow {
                    reason: format!("missing index ({},{})", pos / m + 1, pos % m + 1),
                });
            }
            SequenceWindow::new(
                dim,
                Scale::Double { m },
                values.into_iter().map(T::of_f64).collect(),
                display,
            )
        }
    }
}

/// Write a window in the same format `ingest_csv` reads. Values are printed
/// with Rust's shortest round-trip formatting, so export → ingest is the
/// identity.
pub fn write_csv<T: Real>(window: &SequenceWindow<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path.as_ref())?);
    match window.scale() {
        Scale::Single { n } => {
            for pos in 0..n {
                let coords: Vec<String> = window
                    .point(pos)
                    .iter()
                    .map(|v| format!("{}", v.approx_f64()))
                    .collect();
                writeln!(out, "{}", coords.join(","))?;
            }
        }
        Scale::Double { m } => {
            for n in 1..=m {
                for k in 1..=m {
                    let pos = (n - 1) * m + (k - 1);
                    let coords: Vec<String> = window
                        .point(pos)
                        .iter()
                        .map(|v| format!("{}", v.approx_f64()))
                        .collect();
                    writeln!(out, "{n},{k},{}", coords.join(","))?;
                }
            }
        }
    }
    Ok(())
}
