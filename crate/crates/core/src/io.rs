//! Reading and writing samples and evaluation grids.
//!
//! Samples are CSV with an `x,y` header or JSON `{n, seed, xs, ys}`. Floats
//! are written as shortest round-trip decimals, so a write/read cycle is
//! lossless.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::EstimatorModel;
use crate::frontier::{FrontierFn, SampleSet};

#[derive(Serialize, Deserialize)]
struct Point {
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
struct SampleJson {
    n: usize,
    seed: Option<u64>,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

/// Sample file layout, chosen from the extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleFormat {
    Csv,
    Json,
}

impl SampleFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => SampleFormat::Json,
            _ => SampleFormat::Csv,
        }
    }
}

pub fn write_sample_csv<W: Write>(sample: &SampleSet, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for (&x, &y) in sample.xs().iter().zip(sample.ys()) {
        wtr.serialize(Point { x, y }).map_err(csv_error)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_sample_csv<R: Read>(r: R) -> Result<SampleSet> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `x,y`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut pairs = Vec::new();
    for rec in rdr.deserialize::<Point>() {
        let p = rec.map_err(csv_error)?;
        let line = pairs.len() + 2;
        check_point(p.x, p.y, line)?;
        pairs.push((p.x, p.y));
    }
    if pairs.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "sample file has no observations".into(),
        });
    }
    SampleSet::from_unsorted(pairs, None)
}

pub fn write_sample_json<W: Write>(sample: &SampleSet, w: W) -> Result<()> {
    let rec = SampleJson {
        n: sample.n(),
        seed: sample.seed(),
        xs: sample.xs().to_vec(),
        ys: sample.ys().to_vec(),
    };
    serde_json::to_writer_pretty(w, &rec)?;
    Ok(())
}

pub fn read_sample_json<R: Read>(r: R) -> Result<SampleSet> {
    let rec: SampleJson = serde_json::from_reader(r).map_err(json_error)?;
    if rec.xs.len() != rec.n || rec.ys.len() != rec.n {
        return Err(Error::Parse {
            line: 1,
            message: format!("n = {} but {} xs and {} ys", rec.n, rec.xs.len(), rec.ys.len()),
        });
    }
    for (k, (&x, &y)) in rec.xs.iter().zip(&rec.ys).enumerate() {
        check_point(x, y, 1).map_err(|_| Error::Parse {
            line: 1,
            message: format!("observation {k}: ({x}, {y}) must satisfy 0 <= x <= 1 and y >= 0"),
        })?;
    }
    SampleSet::from_unsorted(rec.xs.into_iter().zip(rec.ys).collect(), rec.seed)
}

pub fn write_sample(sample: &SampleSet, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match SampleFormat::from_path(path) {
        SampleFormat::Csv => write_sample_csv(sample, &mut w)?,
        SampleFormat::Json => write_sample_json(sample, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

pub fn read_sample(path: &Path) -> Result<SampleSet> {
    let r = BufReader::new(File::open(path)?);
    match SampleFormat::from_path(path) {
        SampleFormat::Csv => read_sample_csv(r),
        SampleFormat::Json => read_sample_json(r),
    }
}

pub fn write_model(model: &EstimatorModel, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, model)?;
    w.flush()?;
    Ok(())
}

pub fn read_model(path: &Path) -> Result<EstimatorModel> {
    let r = BufReader::new(File::open(path)?);
    serde_json::from_reader(r).map_err(json_error)
}

#[derive(Serialize)]
struct GridRow {
    x: f64,
    f_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<f64>,
}

/// `(x, f_hat(x)[, f(x)])` on `points` equally spaced abscissas in `[0, 1]`.
pub fn write_grid_csv<W: Write>(
    model: &EstimatorModel,
    frontier: Option<&FrontierFn>,
    points: usize,
    w: W,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let points = points.max(2);
    for i in 0..points {
        let x = i as f64 / (points - 1) as f64;
        wtr.serialize(GridRow {
            x,
            f_hat: model.eval(x, 0)?,
            f: frontier.map(|f| f.value(x)),
        })
        .map_err(csv_error)?;
    }
    wtr.flush()?;
    Ok(())
}

fn check_point(x: f64, y: f64, line: usize) -> Result<()> {
    if !(x >= 0.0 && x <= 1.0) {
        return Err(Error::Parse {
            line,
            message: format!("x = {x} outside [0, 1]"),
        });
    }
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Parse {
            line,
            message: format!("y = {y} must be finite and nonnegative"),
        });
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse {
            line,
            message: csv_kind_message(kind),
        },
    }
}

fn csv_kind_message(kind: csv::ErrorKind) -> String {
    match kind {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            format!("expected {expected_len} fields, found {len}")
        }
        other => format!("{other:?}"),
    }
}

/// JSON syntax errors become parse errors with the offending line.
pub fn json_error(e: serde_json::Error) -> Error {
    if e.is_io() {
        return Error::Json(e);
    }
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_lossless() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let s = f.sample_uniform(200, 11).unwrap();
        let mut buf = Vec::new();
        write_sample_csv(&s, &mut buf).unwrap();
        assert!(buf.starts_with(b"x,y\n"));
        let back = read_sample_csv(buf.as_slice()).unwrap();
        assert_eq!(back.xs(), s.xs());
        assert_eq!(back.ys(), s.ys());
    }

    #[test]
    fn json_round_trip_keeps_seed() {
        let f = FrontierFn::constant(2.0).unwrap();
        let s = f.sample_uniform(50, 4).unwrap();
        let mut buf = Vec::new();
        write_sample_json(&s, &mut buf).unwrap();
        let back = read_sample_json(buf.as_slice()).unwrap();
        assert_eq!(back.seed(), Some(4));
        assert_eq!(back.xs(), s.xs());
    }

    #[test]
    fn csv_errors_report_lines() {
        let bad = "x,y\n0.1,0.2\n0.3,abc\n";
        match read_sample_csv(bad.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let outside = "x,y\n0.1,0.2\n0.5,0.1\n1.5,0.1\n";
        match read_sample_csv(outside.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_sample_csv("a,b\n1,2\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_sample_csv("x,y\n0.1\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn json_errors_report_lines() {
        let bad = "{\n  \"n\": 1,\n  \"seed\": null,\n  \"xs\": [0.1,\n  \"ys\": [0.2]\n}";
        match read_sample_json(bad.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert!(line >= 4),
            other => panic!("{other:?}"),
        }
    }
}
