//! Experiment drivers: single runs, policy comparisons, and parameter
//! sweeps, each emitting CSV.
//!
//! These are the library entry points behind the `cans` binary's `run`,
//! `compare`, and `sweep` subcommands; the runnable files under `examples/`
//! call them directly. All outputs are written atomically (temp file +
//! rename), so a failing run never leaves a partial CSV behind.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fsio;
use crate::optimizer::{self, solve_bruteforce, Policy, SolverOptions};
use crate::profiler;
use crate::simulator::{
    self, aggregate, generate_trace, load_trace, run, BandwidthTrace, RunSummary, TraceSource,
    TraceSpec,
};

/// Where the bandwidth trajectory comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceInput {
    File(PathBuf),
    Generated(TraceSpec),
}

impl TraceInput {
    fn resolve(&self, seed: u64) -> Result<BandwidthTrace> {
        match self {
            TraceInput::File(path) => load_trace(path),
            TraceInput::Generated(spec) => generate_trace(spec, seed),
        }
    }
}

/// Which instance parameter a sweep varies. Values are always in base units
/// (seconds, bits/s); the CLI converts from milliseconds and Mbps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Omega,
    LMax,
    Bandwidth,
}

impl std::fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SweepParameter::Omega => "omega",
            SweepParameter::LMax => "l_max",
            SweepParameter::Bandwidth => "bandwidth",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(SweepParameter::Omega),
            "l_max" | "l-max" => Ok(SweepParameter::LMax),
            "bandwidth" => Ok(SweepParameter::Bandwidth),
            other => Err(Error::Usage(format!(
                "unknown sweep parameter '{other}' (expected omega, l-max, bandwidth)"
            ))),
        }
    }
}

/// A sweep: the parameter and the values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Everything a driver needs for one invocation.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub profile_path: PathBuf,
    pub trace: TraceInput,
    pub policies: Vec<Policy>,
    pub sweep: Option<SweepSpec>,
    pub out_path: PathBuf,
    pub seed: u64,
    pub solver: SolverOptions,
}

impl ExperimentConfig {
    pub fn new(profile_path: impl Into<PathBuf>, out_path: impl Into<PathBuf>) -> Self {
        Self {
            profile_path: profile_path.into(),
            trace: TraceInput::Generated(TraceSpec::RandomWalk {
                total_slots: 50,
                b_min: 20e6,
                b_max: 100e6,
                start: 60e6,
                max_step: 8e6,
            }),
            policies: vec![Policy::Cans],
            sweep: None,
            out_path: out_path.into(),
            seed: 0,
            solver: SolverOptions::default(),
        }
    }
}

/// Runs one policy over one trace and writes the timeline CSV.
pub fn cmd_run(config: &ExperimentConfig) -> Result<RunSummary> {
    if config.policies.len() != 1 {
        return Err(Error::Usage(format!(
            "run takes exactly one policy, got {}",
            config.policies.len()
        )));
    }
    let instance = profiler::load_profiles(&config.profile_path)?;
    let trace = config.trace.resolve(config.seed)?;
    let records = run(&instance, &trace, config.policies[0], &config.solver)?;
    let csv = simulator::timeline_csv(&records, &instance);
    fsio::write_atomic(&config.out_path, &csv)?;
    let ids: Vec<u32> = instance.streams.iter().map(|s| s.id).collect();
    aggregate(&records, &ids)
}

/// One row of a policy comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub policy: Policy,
    pub summary: RunSummary,
}

pub const COMPARE_CSV_HEADER: &str =
    "policy,mean_latency_ms,mean_accuracy_pct,mean_objective,reconfigurations,infeasible_holds";

/// Runs every requested policy over the same trace and writes one summary
/// row per policy.
pub fn cmd_compare(config: &ExperimentConfig) -> Result<Vec<CompareRow>> {
    if config.policies.len() < 2 {
        return Err(Error::Usage(
            "compare needs at least two policies".into(),
        ));
    }
    let instance = profiler::load_profiles(&config.profile_path)?;
    let trace = config.trace.resolve(config.seed)?;
    let ids: Vec<u32> = instance.streams.iter().map(|s| s.id).collect();
    let mut rows = Vec::with_capacity(config.policies.len());
    for &policy in &config.policies {
        let records = run(&instance, &trace, policy, &config.solver)?;
        rows.push(CompareRow {
            policy,
            summary: aggregate(&records, &ids)?,
        });
    }
    let mut csv = String::from(COMPARE_CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.policy,
            row.summary.mean_latency_s * 1e3,
            row.summary.mean_accuracy * 100.0,
            row.summary.mean_objective,
            row.summary.reconfigurations,
            row.summary.infeasible_holds,
        ));
    }
    fsio::write_atomic(&config.out_path, &csv)?;
    Ok(rows)
}

/// One row of a sweep: a swept value, a policy, its aggregates, and the
/// exact-solver reference at the first slot's bandwidth (`None` when that
/// instance is infeasible).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub parameter: SweepParameter,
    pub value: f64,
    pub policy: Policy,
    pub summary: RunSummary,
    pub bf_objective: Option<f64>,
    pub bf_accuracy_term: Option<f64>,
}

pub const SWEEP_CSV_HEADER: &str = "parameter,value,policy,mean_latency_ms,mean_accuracy_pct,mean_objective,reconfigurations,infeasible_holds,bf_objective,bf_accuracy_term";

/// Sweeps one parameter across its value list for every requested policy.
///
/// Omega and deadline sweeps run over the configured trace; a bandwidth
/// sweep replaces the trace with a constant one at each swept value. Each
/// row also carries the exhaustive solver's objective and accuracy term so
/// monotonicity across the sweep can be checked downstream.
pub fn cmd_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Usage("sweep requires a sweep specification".into()))?;
    if sweep.values.is_empty() {
        return Err(Error::Usage("sweep needs a non-empty value list".into()));
    }
    if config.policies.is_empty() {
        return Err(Error::Usage("sweep needs at least one policy".into()));
    }
    let base_instance = profiler::load_profiles(&config.profile_path)?;
    let base_trace = config.trace.resolve(config.seed)?;
    let ids: Vec<u32> = base_instance.streams.iter().map(|s| s.id).collect();

    let mut rows = Vec::with_capacity(sweep.values.len() * config.policies.len());
    for &value in &sweep.values {
        let mut instance = base_instance.clone();
        let trace = match sweep.parameter {
            SweepParameter::Omega => {
                instance.params.omega = value;
                base_trace.clone()
            }
            SweepParameter::LMax => {
                instance.params.l_max = value;
                base_trace.clone()
            }
            SweepParameter::Bandwidth => {
                instance.params.bandwidth = value;
                BandwidthTrace::new(vec![value; base_trace.len()], TraceSource::Steps)?
            }
        };
        instance.validate().map_err(|e| {
            Error::Usage(format!("swept value {value} produces an invalid instance: {e}"))
        })?;

        // Exact reference at the first slot's bandwidth.
        let mut reference = instance.clone();
        reference.params.bandwidth = trace.slots[0];
        let (bf_objective, bf_accuracy_term) =
            match solve_bruteforce(&reference, &config.solver)? {
                Some(assignment) => (
                    Some(optimizer::objective(&reference, &assignment, &config.solver)?),
                    Some(optimizer::accuracy_term(&reference, &assignment, &config.solver)?),
                ),
                None => (None, None),
            };

        for &policy in &config.policies {
            let records = run(&instance, &trace, policy, &config.solver)?;
            rows.push(SweepRow {
                parameter: sweep.parameter,
                value,
                policy,
                summary: aggregate(&records, &ids)?,
                bf_objective,
                bf_accuracy_term,
            });
        }
    }

    let mut csv = String::from(SWEEP_CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.parameter,
            row.value,
            row.policy,
            row.summary.mean_latency_s * 1e3,
            row.summary.mean_accuracy * 100.0,
            row.summary.mean_objective,
            row.summary.reconfigurations,
            row.summary.infeasible_holds,
            opt(row.bf_objective),
            opt(row.bf_accuracy_term),
        ));
    }
    fsio::write_atomic(&config.out_path, &csv)?;
    Ok(rows)
}

/// Writes a generated trace to disk as CSV.
pub fn cmd_gen_trace(spec: &TraceSpec, seed: u64, out_path: &Path) -> Result<BandwidthTrace> {
    let trace = generate_trace(spec, seed)?;
    fsio::write_atomic(out_path, &simulator::trace_csv(&trace))?;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_rejects_multiple_policies() {
        let mut config = ExperimentConfig::new("missing.json", "out.csv");
        config.policies = vec![Policy::Cans, Policy::DelayOptimal];
        assert!(matches!(cmd_run(&config), Err(Error::Usage(_))));
    }

    #[test]
    fn compare_rejects_a_single_policy() {
        let config = ExperimentConfig::new("missing.json", "out.csv");
        assert!(matches!(cmd_compare(&config), Err(Error::Usage(_))));
    }

    #[test]
    fn sweep_requires_a_spec_and_values() {
        let mut config = ExperimentConfig::new("missing.json", "out.csv");
        assert!(matches!(cmd_sweep(&config), Err(Error::Usage(_))));
        config.sweep = Some(SweepSpec {
            parameter: SweepParameter::Omega,
            values: vec![],
        });
        assert!(matches!(cmd_sweep(&config), Err(Error::Usage(_))));
    }

    #[test]
    fn missing_profile_is_an_io_error() {
        let mut config = ExperimentConfig::new("definitely/missing.json", "out.csv");
        config.policies = vec![Policy::Cans];
        assert!(matches!(cmd_run(&config), Err(Error::Io(_))));
    }
}
