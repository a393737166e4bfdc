#![forbid(unsafe_code)]

//! Self-configuration for bandwidth-constrained camera analytics networks.
//!
//! Multiple surveillance cameras share one uplink toward an edge device that
//! runs object detection. Each stream has two knobs — video resolution and
//! which detection model processes it — that pull latency and accuracy in
//! opposite directions. This crate models that tradeoff, solves the
//! configuration problem under deadline, realtime, and shared-bandwidth
//! constraints, and simulates how the adaptive policy tracks bandwidth
//! dynamics, re-solving only when bandwidth drifts past a threshold.
//!
//! The pieces:
//!
//! * [`model`] — streams, detectors, and the bitrate/latency/accuracy math.
//! * [`optimizer`] — constraints, the QoS-weighted objective, the greedy
//!   solver, an exhaustive reference solver, and three baseline policies.
//! * [`profiler`] — accuracy-curve fitting and profile file I/O.
//! * [`simulator`] — slotted bandwidth traces, the reconfiguration trigger,
//!   timeline records, and aggregates.
//! * [`evaluation`] — IOU matching and F1 scoring of detection files against
//!   a golden configuration.
//! * [`experiment`] — run/compare/sweep drivers that emit CSV.
//!
//! # Quickstart
//!
//! ```no_run
//! use cans::optimizer::{solve_cans, Policy, SolverOptions};
//! use cans::simulator::{generate_trace, run, TraceSpec};
//!
//! let instance = cans::profiler::load_profiles("profiles/paper_like.json")?;
//! let opts = SolverOptions::default();
//!
//! // One-shot configuration at the instance's current bandwidth.
//! let assignment = solve_cans(&instance, &opts)?.expect("feasible");
//!
//! // Or a full simulation under a seeded bandwidth walk.
//! let spec = TraceSpec::RandomWalk {
//!     total_slots: 50,
//!     b_min: 20e6,
//!     b_max: 100e6,
//!     start: 60e6,
//!     max_step: 8e6,
//! };
//! let trace = generate_trace(&spec, 42)?;
//! let records = run(&instance, &trace, Policy::Cans, &opts)?;
//! println!("{}", records.len());
//! # Ok::<(), cans::Error>(())
//! ```
//!
//! Each major capability has a runnable demo under `examples/`; the thin
//! `cans` binary exposes the same drivers as subcommands.

pub mod error;
pub mod evaluation;
pub mod experiment;
mod fsio;
pub mod model;
pub mod optimizer;
pub mod profiler;
pub mod simulator;

pub use error::{Error, Result};
pub use model::{
    bitrate, AccuracyCurve, Assignment, DetectionModel, GlobalParams, ProcLatencyTable,
    StreamChoice, VideoStream,
};
pub use optimizer::{Policy, ProblemInstance, SolverOptions};
