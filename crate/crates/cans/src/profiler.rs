//! Accuracy-curve fitting and profile file I/O.
//!
//! Detector accuracy is profiled offline by scoring detections at each
//! resolution against the golden configuration (see [`crate::evaluation`]);
//! the measured points are then compressed into the quadratic the optimizer
//! consumes. The fit is ordinary least squares on the three-coefficient
//! Vandermonde system, solved by normal equations. Resolutions are rescaled
//! by 1/1000 first: r^4 near 1080px is ~1.4e12 and would make the raw system
//! badly conditioned, while the rescaled abscissae sit near 1.
//!
//! Profiles (streams + models + parameters) live in a single JSON document
//! with top-level keys `streams`, `models`, `params`; the schema is the
//! serde layout of [`ProblemInstance`] and is documented in the README.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fsio::{self, read_file};
use crate::optimizer::ProblemInstance;

/// One measured accuracy point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracySample {
    /// Vertical resolution, pixels.
    pub resolution: f64,
    /// Measured accuracy, percent in [0, 100].
    pub accuracy: f64,
}

impl AccuracySample {
    pub fn new(resolution: f64, accuracy: f64) -> Result<Self> {
        let resolution_ok = resolution.is_finite() && resolution > 0.0;
        if !resolution_ok {
            return Err(Error::invariant(
                "sample.resolution",
                format!("must be positive and finite, got {resolution}"),
            ));
        }
        if !(0.0..=100.0).contains(&accuracy) {
            return Err(Error::invariant(
                "sample.accuracy",
                format!("must lie in [0, 100], got {accuracy}"),
            ));
        }
        Ok(Self {
            resolution,
            accuracy,
        })
    }
}

/// Result of [`fit_accuracy_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
    /// Mean squared residual over the input samples, percent^2.
    pub mse: f64,
}

impl QuadraticFit {
    pub fn evaluate(&self, r: f64) -> f64 {
        self.c2 * r * r + self.c1 * r + self.c0
    }
}

const RESCALE: f64 = 1e-3;

/// Least-squares quadratic fit of accuracy against resolution.
///
/// Needs at least three samples at three distinct resolutions; when the
/// samples lie exactly on a quadratic the fit is exact (mse below 1e-9).
pub fn fit_accuracy_curve(samples: &[AccuracySample]) -> Result<QuadraticFit> {
    let mut distinct: Vec<f64> = samples.iter().map(|s| s.resolution).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite resolutions"));
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::RankDeficient(distinct.len()));
    }

    // Normal equations M c = v for a + b s + c s^2 with s = r / 1000.
    let mut m = [[0.0f64; 3]; 3];
    let mut v = [0.0f64; 3];
    for s in samples {
        let x = s.resolution * RESCALE;
        let pows = [1.0, x, x * x, x * x * x, x * x * x * x];
        for row in 0..3 {
            for col in 0..3 {
                m[row][col] += pows[row + col];
            }
            v[row] += pows[row] * s.accuracy;
        }
    }

    let coeffs = solve_3x3(m, v)?;
    let fit = QuadraticFit {
        c0: coeffs[0],
        c1: coeffs[1] * RESCALE,
        c2: coeffs[2] * RESCALE * RESCALE,
        mse: 0.0,
    };
    let mse = samples
        .iter()
        .map(|s| {
            let r = fit.evaluate(s.resolution) - s.accuracy;
            r * r
        })
        .sum::<f64>()
        / samples.len() as f64;
    Ok(QuadraticFit { mse, ..fit })
}

/// Gaussian elimination with partial pivoting on a 3x3 system.
fn solve_3x3(mut m: [[f64; 3]; 3], mut v: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| {
                m[a][col]
                    .abs()
                    .partial_cmp(&m[b][col].abs())
                    .expect("finite matrix entries")
            })
            .expect("non-empty range");
        if m[pivot][col].abs() < 1e-12 {
            return Err(Error::RankDeficient(col));
        }
        m.swap(col, pivot);
        v.swap(col, pivot);
        let pivot_row = m[col];
        for row in (col + 1)..3 {
            let f = m[row][col] / pivot_row[col];
            for (dst, src) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *dst -= f * src;
            }
            v[row] -= f * v[col];
        }
    }
    let mut x = [0.0f64; 3];
    for row in (0..3).rev() {
        let mut acc = v[row];
        for k in (row + 1)..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// Loads and fully validates a profile document.
pub fn load_profiles(path: impl AsRef<Path>) -> Result<ProblemInstance> {
    let text = read_file(path.as_ref())?;
    let instance: ProblemInstance =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    instance.validate()?;
    Ok(instance)
}

/// Writes a profile document (pretty JSON, atomic replace).
pub fn save_profiles(path: impl AsRef<Path>, instance: &ProblemInstance) -> Result<()> {
    instance.validate()?;
    let mut text = serde_json::to_string_pretty(instance)?;
    text.push('\n');
    fsio::write_atomic(path.as_ref(), &text)
}

/// Reads a two-column `resolution,accuracy` CSV (header required).
pub fn load_samples(path: impl AsRef<Path>) -> Result<Vec<AccuracySample>> {
    let text = read_file(path.as_ref())?;
    parse_samples_csv(&text)
}

pub fn parse_samples_csv(text: &str) -> Result<Vec<AccuracySample>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "resolution,accuracy" => {}
        Some((_, header)) => {
            return Err(Error::Parse(format!(
                "expected header 'resolution,accuracy', got '{header}'"
            )))
        }
        None => return Err(Error::Parse("empty samples file".into())),
    }
    let mut samples = Vec::new();
    for (n, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (r, a) = match (parts.next(), parts.next(), parts.next()) {
            (Some(r), Some(a), None) => (r, a),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected two comma-separated fields",
                    n + 1
                )))
            }
        };
        let resolution: f64 = r
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: resolution: {e}", n + 1)))?;
        let accuracy: f64 = a
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: accuracy: {e}", n + 1)))?;
        samples.push(AccuracySample::new(resolution, accuracy)?);
    }
    Ok(samples)
}
