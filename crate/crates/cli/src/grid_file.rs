//! Sampled boundary functions on disk.
//!
//! CSV files carry the header `x,y,theta,re_f,im_f`; JSON files hold an array
//! of objects with the same keys. The extension picks the format.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use holext::slicing::{GridSample, SampledGrid};
use holext::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::json::fmt_f64;

pub const HEADER: [&str; 5] = ["x", "y", "theta", "re_f", "im_f"];

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Row {
    x: f64,
    y: f64,
    theta: f64,
    re_f: f64,
    im_f: f64,
}

impl From<Row> for GridSample {
    fn from(r: Row) -> Self {
        GridSample {
            x: r.x,
            y: r.y,
            theta: r.theta,
            value: Complex::new(r.re_f, r.im_f),
        }
    }
}

pub fn read_samples(path: &Path) -> Result<Vec<GridSample>> {
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let rows: Vec<Row> = if is_json {
        serde_json::from_reader(BufReader::new(file)).map_err(|source| CliError::Json {
            path: path.into(),
            source,
        })?
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(file);
        let header = reader.headers().map_err(|source| CliError::Csv {
            path: path.into(),
            source,
        })?;
        if header.iter().ne(HEADER) {
            return Err(CliError::usage(format!(
                "{}: header must be `{}`",
                path.display(),
                HEADER.join(",")
            )));
        }
        reader
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|source| CliError::Csv {
                path: path.into(),
                source,
            })?
    };
    Ok(rows.into_iter().map(GridSample::from).collect())
}

pub fn read_grid(path: &Path) -> Result<SampledGrid> {
    let samples = read_samples(path)?;
    SampledGrid::from_samples(&samples)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleRow {
    x: f64,
    y: f64,
    re: f64,
    im: f64,
}

/// `(point, value)` pairs from a CSV file with header `x,y,re,im`.
pub fn read_circle_samples(path: &Path) -> Result<Vec<(Complex, Complex)>> {
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file);
    let header = reader.headers().map_err(|source| CliError::Csv {
        path: path.into(),
        source,
    })?;
    if header.iter().ne(["x", "y", "re", "im"]) {
        return Err(CliError::usage(format!(
            "{}: header must be `x,y,re,im`",
            path.display()
        )));
    }
    reader
        .deserialize::<CircleRow>()
        .map(|r| {
            r.map(|r| (Complex::new(r.x, r.y), Complex::new(r.re, r.im)))
                .map_err(|source| CliError::Csv {
                    path: path.into(),
                    source,
                })
        })
        .collect()
}

pub fn write_csv<W: Write>(out: W, samples: &[GridSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let wrap = |source| CliError::Csv {
        path: "<output>".into(),
        source,
    };
    w.write_record(HEADER).map_err(wrap)?;
    for s in samples {
        w.write_record([s.x, s.y, s.theta, s.value.re, s.value.im].map(fmt_f64))
            .map_err(wrap)?;
    }
    w.flush().map_err(|source| CliError::Write {
        path: "<output>".into(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use holext::geometry::ComplexPoint2;
    use holext::slicing::BoundaryFunction;
    use std::f64::consts::TAU;

    fn samples() -> Vec<GridSample> {
        let mut out = Vec::new();
        for i in 0..=20 {
            for j in 0..=20 {
                let (x, y) = (-0.7 + 0.07 * i as f64, -0.7 + 0.07 * j as f64);
                for k in 0..16 {
                    let theta = TAU * k as f64 / 16.0;
                    let z = Complex::new(x, y);
                    let w = Complex::from_polar((1.0 - z.norm_sqr()).sqrt(), theta);
                    out.push(GridSample {
                        x,
                        y,
                        theta,
                        value: z + w * w,
                    });
                }
            }
        }
        out
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        write_csv(File::create(&path).unwrap(), &samples()).unwrap();
        let back = read_samples(&path).unwrap();
        assert_eq!(back, samples());
        let grid = read_grid(&path).unwrap();
        let p = ComplexPoint2::new(
            Complex::new(0.1, 0.2),
            Complex::from_polar((0.95f64).sqrt(), 0.3),
        );
        assert!((grid.eval(p) - (p.z + p.w * p.w)).norm() < 1e-2);
    }

    #[test]
    fn json_grid_is_accepted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        let rows: Vec<Row> = samples()
            .iter()
            .map(|s| Row {
                x: s.x,
                y: s.y,
                theta: s.theta,
                re_f: s.value.re,
                im_f: s.value.im,
            })
            .collect();
        std::fs::write(&path, serde_json::to_vec(&rows).unwrap()).unwrap();
        assert_eq!(read_samples(&path).unwrap().len(), rows.len());
    }

    #[test]
    fn wrong_header_and_missing_file_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x,y,theta,re,im\n0,0,0,1,0\n").unwrap();
        assert!(matches!(read_samples(&path), Err(CliError::Usage(_))));
        assert!(matches!(
            read_samples(&dir.path().join("nope.csv")),
            Err(CliError::Read { .. })
        ));
    }
}
