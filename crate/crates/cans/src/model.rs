//! Domain types and the analytic bitrate/latency/accuracy relations.
//!
//! The setting: `K` camera streams share one uplink channel of bandwidth `b`
//! (bits/s) toward an edge device that hosts `N` object-detection models. Two
//! knobs are tunable per stream — its vertical resolution `r` (chosen from a
//! discrete ladder such as 360p..1080p) and which detection model processes
//! it. The analytic model underneath every solver and simulation:
//!
//! ```text
//! bitrate:       p(r)     = alpha * r^2                    [bits/s]
//! transmission:  l_tran   = p(r) / (framerate * b)         [s per frame]
//! end to end:    l        = l_tran + l_proc(r, model)      [s per frame]
//! accuracy:      a(r)     = c2*r^2 + c1*r + c0, clamped    [percent, 0..100]
//! ```
//!
//! `r` is the vertical pixel count and `r^2` stands in for the frame's pixel
//! count; `alpha` is the bit cost per pixel. Processing latency comes from a
//! measured per-resolution table with linear interpolation between profiled
//! points; the accuracy curve is a concave quadratic fitted to measurements
//! (see [`crate::profiler`]).
//!
//! All latencies are seconds internally; the CLI and CSV outputs render
//! milliseconds. All types are immutable after construction and the
//! operations are pure, so everything here is safe to evaluate concurrently.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn positive_finite(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// One camera's stream and its service demands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VideoStream {
    /// Stream identifier (unique within an instance).
    pub id: u32,
    /// Frames per second.
    pub framerate: f64,
    /// QoS demand `q`. The objective weights a stream by `1/q`.
    pub qos: f64,
    /// Tolerable per-frame response deadline, seconds.
    pub deadline: f64,
    /// Admissible vertical resolutions, strictly increasing, pixels.
    pub resolution_ladder: Vec<u32>,
}

impl VideoStream {
    pub fn new(
        id: u32,
        framerate: f64,
        qos: f64,
        deadline: f64,
        resolution_ladder: Vec<u32>,
    ) -> Result<Self> {
        let stream = Self {
            id,
            framerate,
            qos,
            deadline,
            resolution_ladder,
        };
        stream.validate("stream")?;
        Ok(stream)
    }

    /// Checks every field invariant; `field` prefixes error paths.
    pub fn validate(&self, field: &str) -> Result<()> {
        if !positive_finite(self.framerate) {
            return Err(Error::invariant(
                format!("{field}.framerate"),
                format!("must be positive and finite, got {}", self.framerate),
            ));
        }
        if !positive_finite(self.qos) {
            return Err(Error::invariant(
                format!("{field}.qos"),
                format!("must be positive and finite, got {}", self.qos),
            ));
        }
        if !positive_finite(self.deadline) {
            return Err(Error::invariant(
                format!("{field}.deadline"),
                format!("must be positive and finite, got {}", self.deadline),
            ));
        }
        if self.resolution_ladder.is_empty() {
            return Err(Error::invariant(
                format!("{field}.resolution_ladder"),
                "must be non-empty",
            ));
        }
        if self.resolution_ladder[0] == 0 {
            return Err(Error::invariant(
                format!("{field}.resolution_ladder"),
                "resolutions must be positive",
            ));
        }
        if !self.resolution_ladder.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invariant(
                format!("{field}.resolution_ladder"),
                "must be strictly increasing",
            ));
        }
        Ok(())
    }

    /// Per-frame transmission latency in seconds at resolution `r` over a
    /// shared channel of `bandwidth_bps`: `bitrate / (framerate * bandwidth)`.
    pub fn transmission_latency(&self, r: u32, bandwidth_bps: f64, alpha: f64) -> Result<f64> {
        if !positive_finite(bandwidth_bps) {
            return Err(Error::Domain(format!(
                "bandwidth must be positive, got {bandwidth_bps}"
            )));
        }
        if !positive_finite(self.framerate) {
            return Err(Error::Domain(format!(
                "framerate must be positive, got {}",
                self.framerate
            )));
        }
        Ok(bitrate(r, alpha)? / (self.framerate * bandwidth_bps))
    }

    /// Transmission plus processing latency, seconds per frame.
    pub fn end_to_end_latency(
        &self,
        r: u32,
        model: &DetectionModel,
        bandwidth_bps: f64,
        alpha: f64,
    ) -> Result<f64> {
        Ok(self.transmission_latency(r, bandwidth_bps, alpha)? + model.proc_latency_at(r)?)
    }
}

/// Measured per-resolution processing latency, seconds, with linear
/// interpolation between profiled points. Lookups outside the profiled
/// range are rejected rather than extrapolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProcLatencyTable(BTreeMap<u32, f64>);

impl ProcLatencyTable {
    pub fn from_points(points: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let table = Self(points.into_iter().collect());
        table.validate("proc_latency")?;
        Ok(table)
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::invariant(field, "must contain at least one point"));
        }
        for (&r, &v) in &self.0 {
            if r == 0 {
                return Err(Error::invariant(field, "resolutions must be positive"));
            }
            if !positive_finite(v) {
                return Err(Error::invariant(
                    field,
                    format!("latency at {r}px must be positive and finite, got {v}"),
                ));
            }
        }
        Ok(())
    }

    pub fn min_resolution(&self) -> u32 {
        *self.0.keys().next().expect("table is non-empty")
    }

    pub fn max_resolution(&self) -> u32 {
        *self.0.keys().next_back().expect("table is non-empty")
    }

    /// True when `r` lies inside the profiled range.
    pub fn covers(&self, r: u32) -> bool {
        r >= self.min_resolution() && r <= self.max_resolution()
    }

    /// Latency at `r`, exact or linearly interpolated.
    pub fn lookup(&self, r: u32) -> Result<f64> {
        if let Some(&v) = self.0.get(&r) {
            return Ok(v);
        }
        let below = self.0.range(..r).next_back();
        let above = self.0.range(r..).next();
        match (below, above) {
            (Some((&r0, &v0)), Some((&r1, &v1))) => {
                let t = f64::from(r - r0) / f64::from(r1 - r0);
                Ok(v0 + t * (v1 - v0))
            }
            _ => Err(Error::ProfileMissing {
                resolution: r,
                min: self.min_resolution(),
                max: self.max_resolution(),
            }),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.0.iter().map(|(&r, &v)| (r, v))
    }
}

/// Quadratic accuracy-vs-resolution curve in percent: `c2*r^2 + c1*r + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccuracyCurve {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl AccuracyCurve {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }

    /// Evaluates the quadratic and clamps to [0, 100]. The fitted polynomial
    /// can dip below zero at small resolutions; accuracy is a percentage, so
    /// the clamp keeps downstream objectives bounded.
    pub fn evaluate(&self, r: f64) -> f64 {
        (self.c2 * r * r + self.c1 * r + self.c0).clamp(0.0, 100.0)
    }

    /// Resolution at which the (concave) curve peaks: `-c1 / (2 c2)`.
    pub fn vertex(&self) -> f64 {
        -self.c1 / (2.0 * self.c2)
    }
}

/// One deployable detector: its measured processing-latency table and its
/// fitted accuracy curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionModel {
    /// Model identifier (unique within an instance).
    pub id: u32,
    pub proc_latency: ProcLatencyTable,
    pub accuracy_coeffs: AccuracyCurve,
}

impl DetectionModel {
    pub fn new(id: u32, proc_latency: ProcLatencyTable, accuracy_coeffs: AccuracyCurve) -> Result<Self> {
        let model = Self {
            id,
            proc_latency,
            accuracy_coeffs,
        };
        model.validate("model")?;
        Ok(model)
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        self.proc_latency.validate(&format!("{field}.proc_latency"))?;
        // Concavity over the ladder range: diminishing accuracy gains.
        let concave = self.accuracy_coeffs.c2 < 0.0;
        if !concave {
            return Err(Error::invariant(
                format!("{field}.accuracy_coeffs.c2"),
                format!("must be negative (concave curve), got {}", self.accuracy_coeffs.c2),
            ));
        }
        Ok(())
    }

    /// Detection accuracy at resolution `r`, percent in [0, 100].
    pub fn accuracy(&self, r: u32) -> f64 {
        self.accuracy_coeffs.evaluate(f64::from(r))
    }

    /// Processing latency at resolution `r`, seconds.
    pub fn proc_latency_at(&self, r: u32) -> Result<f64> {
        self.proc_latency.lookup(r)
    }
}

/// System-wide parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalParams {
    /// Bits per pixel in one encoded frame.
    pub alpha: f64,
    /// Latency value of one unit of accuracy in the objective, seconds.
    pub omega: f64,
    /// Current shared uplink bandwidth, bits/s.
    pub bandwidth: f64,
    /// Global latency deadline applied to every stream, seconds
    /// (the tightest per-stream deadline in the deployment).
    pub l_max: f64,
    /// Relative bandwidth change that triggers reconfiguration, in (0, 1).
    pub reconfig_threshold: f64,
    /// Overlap threshold above which a detection counts as a true positive.
    pub iou_min: f64,
}

impl GlobalParams {
    pub fn validate(&self, field: &str) -> Result<()> {
        let positive = [
            ("alpha", self.alpha),
            ("bandwidth", self.bandwidth),
            ("l_max", self.l_max),
        ];
        for (name, v) in positive {
            if !positive_finite(v) {
                return Err(Error::invariant(
                    format!("{field}.{name}"),
                    format!("must be positive and finite, got {v}"),
                ));
            }
        }
        // omega = 0 is meaningful (latency-only objective), so unlike the
        // other parameters it is only required to be non-negative.
        let omega_ok = self.omega.is_finite() && self.omega >= 0.0;
        if !omega_ok {
            return Err(Error::invariant(
                format!("{field}.omega"),
                format!("must be non-negative and finite, got {}", self.omega),
            ));
        }
        let threshold_ok = self.reconfig_threshold > 0.0 && self.reconfig_threshold < 1.0;
        if !threshold_ok {
            return Err(Error::invariant(
                format!("{field}.reconfig_threshold"),
                format!("must lie in (0, 1), got {}", self.reconfig_threshold),
            ));
        }
        let iou_ok = self.iou_min > 0.0 && self.iou_min <= 1.0;
        if !iou_ok {
            return Err(Error::invariant(
                format!("{field}.iou_min"),
                format!("must lie in (0, 1], got {}", self.iou_min),
            ));
        }
        Ok(())
    }
}

/// One stream's configuration decision: a resolution from its ladder and the
/// index (into the instance's model list) of the detector assigned to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamChoice {
    pub resolution: u32,
    pub model: usize,
}

/// The full decision vector, one choice per stream, index-aligned with the
/// instance's stream list. Exactly one model per stream by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub choices: Vec<StreamChoice>,
}

impl Assignment {
    pub fn new(choices: Vec<StreamChoice>) -> Self {
        Self { choices }
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}

/// Video bitrate at resolution `r`: `alpha * r^2` bits/s.
pub fn bitrate(r: u32, alpha: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    if !positive_finite(alpha) {
        return Err(Error::Domain(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    let r = f64::from(r);
    Ok(alpha * r * r)
}
