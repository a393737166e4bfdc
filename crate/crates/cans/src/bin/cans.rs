//! Thin CLI over the library drivers: `run`, `compare`, `sweep`, `fit`,
//! `score`, and `gen-trace`.
//!
//! Bandwidth flags and sweep values are in Mbps and deadline sweep values in
//! milliseconds; everything is converted to base units (bits/s, seconds) at
//! this boundary. Exit codes: 0 success, 1 internal error, 2 usage, 3 I/O,
//! 4 parse/validation, 5 infeasible at startup.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cans::error::Error;
use cans::evaluation;
use cans::experiment::{
    cmd_compare, cmd_gen_trace, cmd_run, cmd_sweep, ExperimentConfig, SweepParameter, SweepSpec,
    TraceInput,
};
use cans::optimizer::{AccuracyUnits, DeadlineMode, Policy, SolverOptions};
use cans::profiler;
use cans::simulator::TraceSpec;

const MBPS: f64 = 1e6;

#[derive(Parser)]
#[command(name = "cans", version, about = "Camera-network self-configuration experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one policy over a bandwidth trace and write a timeline CSV.
    Run(RunArgs),
    /// Run several policies over the same trace and write one summary row each.
    Compare(CompareArgs),
    /// Sweep omega, l-max, or bandwidth and write one row per value and policy.
    Sweep(SweepArgs),
    /// Fit a quadratic accuracy curve to resolution,accuracy samples.
    Fit(FitArgs),
    /// Score a detections CSV against golden detections (per-frame F1 + mean).
    Score(ScoreArgs),
    /// Generate a synthetic bandwidth trace CSV.
    GenTrace(GenTraceArgs),
}

#[derive(Args)]
struct TraceArgs {
    /// Bandwidth trace CSV (slot,bandwidth_bps). Mutually exclusive with
    /// --trace-gen.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Generate the trace instead: "steps" or "random-walk" (the default
    /// when no --trace is given).
    #[arg(long = "trace-gen", value_parser = parse_trace_kind)]
    gen: Option<TraceKind>,
    /// Number of slots for generated traces.
    #[arg(long, default_value_t = 50)]
    slots: usize,
    /// Step levels in Mbps (steps generator), e.g. --levels 100,80,64.
    #[arg(long, value_delimiter = ',')]
    levels: Vec<f64>,
    /// Slots at which the level changes (steps generator), e.g. 5,10.
    #[arg(long, value_delimiter = ',')]
    change_slots: Vec<usize>,
    /// Lower bandwidth bound in Mbps (random-walk generator).
    #[arg(long, default_value_t = 20.0)]
    b_min: f64,
    /// Upper bandwidth bound in Mbps (random-walk generator).
    #[arg(long, default_value_t = 100.0)]
    b_max: f64,
    /// Starting bandwidth in Mbps (random-walk generator; defaults to the midpoint).
    #[arg(long)]
    start: Option<f64>,
    /// Largest per-slot step in Mbps (random-walk generator).
    #[arg(long, default_value_t = 8.0)]
    max_step: f64,
}

#[derive(Clone, Copy)]
enum TraceKind {
    Steps,
    RandomWalk,
}

fn parse_trace_kind(s: &str) -> Result<TraceKind, String> {
    match s {
        "steps" => Ok(TraceKind::Steps),
        "random-walk" => Ok(TraceKind::RandomWalk),
        other => Err(format!("unknown generator '{other}' (expected steps, random-walk)")),
    }
}

impl TraceArgs {
    fn to_spec(&self) -> Result<TraceSpec, Error> {
        match self.gen {
            Some(TraceKind::Steps) => Ok(TraceSpec::Steps {
                levels: self.levels.iter().map(|v| v * MBPS).collect(),
                change_slots: self.change_slots.clone(),
                total_slots: self.slots,
            }),
            Some(TraceKind::RandomWalk) | None => Ok(TraceSpec::RandomWalk {
                total_slots: self.slots,
                b_min: self.b_min * MBPS,
                b_max: self.b_max * MBPS,
                start: self.start.unwrap_or((self.b_min + self.b_max) / 2.0) * MBPS,
                max_step: self.max_step * MBPS,
            }),
        }
    }

    fn to_input(&self) -> Result<TraceInput, Error> {
        match (&self.trace, self.gen) {
            (Some(path), None) => Ok(TraceInput::File(path.clone())),
            (None, _) => Ok(TraceInput::Generated(self.to_spec()?)),
            (Some(_), Some(_)) => Err(Error::Usage(
                "--trace and --trace-gen are mutually exclusive".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Check each stream against its own deadline instead of the global l_max.
    #[arg(long)]
    per_stream_deadline: bool,
    /// Units for accuracy inside the objective: fraction or percent.
    #[arg(long, default_value = "fraction", value_parser = parse_units)]
    accuracy_units: AccuracyUnits,
}

fn parse_units(s: &str) -> Result<AccuracyUnits, String> {
    match s {
        "fraction" => Ok(AccuracyUnits::Fraction),
        "percent" => Ok(AccuracyUnits::Percent),
        other => Err(format!("unknown units '{other}' (expected fraction, percent)")),
    }
}

impl SolverArgs {
    fn to_options(&self) -> SolverOptions {
        SolverOptions {
            deadline_mode: if self.per_stream_deadline {
                DeadlineMode::PerStream
            } else {
                DeadlineMode::Global
            },
            accuracy_units: self.accuracy_units,
            ..SolverOptions::default()
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Profile JSON (streams, models, params).
    #[arg(long)]
    profile: PathBuf,
    #[command(flatten)]
    trace: TraceArgs,
    /// Policy: cans, accuracy-optimal, delay-optimal, delay-chronic.
    #[arg(long, default_value = "cans", value_parser = parse_policy)]
    policy: Policy,
    /// Seed for generated traces.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timeline CSV output path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    profile: PathBuf,
    #[command(flatten)]
    trace: TraceArgs,
    /// Comma-separated policy list (at least two).
    #[arg(long = "policy", value_delimiter = ',', value_parser = parse_policy)]
    policies: Vec<Policy>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comparison CSV output path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    profile: PathBuf,
    #[command(flatten)]
    trace: TraceArgs,
    /// Swept parameter: omega, l-max, or bandwidth.
    #[arg(long, value_parser = parse_sweep_parameter)]
    sweep: SweepParameter,
    /// Swept values: omega is unitless, l-max in milliseconds, bandwidth in
    /// Mbps. Defaults to 20,40,60,80,100 for a bandwidth sweep.
    #[arg(long, value_delimiter = ',')]
    values: Vec<f64>,
    /// Comma-separated policies to evaluate at each value.
    #[arg(long = "policy", value_delimiter = ',', default_value = "cans", value_parser = parse_policy)]
    policies: Vec<Policy>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep CSV output path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct FitArgs {
    /// Two-column CSV: resolution,accuracy (accuracy in percent).
    #[arg(long)]
    samples: PathBuf,
}

#[derive(Args)]
struct ScoreArgs {
    /// Detections to score (frame_id,x_min,y_min,x_max,y_max).
    #[arg(long)]
    detected: PathBuf,
    /// Golden-configuration detections, same format.
    #[arg(long)]
    golden: PathBuf,
    /// IOU threshold (strictly exceeded for a true positive).
    #[arg(long, default_value_t = 0.7)]
    iou_min: f64,
}

#[derive(Args)]
struct GenTraceArgs {
    #[command(flatten)]
    trace: TraceArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trace CSV output path.
    #[arg(long)]
    out: PathBuf,
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    Policy::from_str(s).map_err(|e| e.to_string())
}

fn parse_sweep_parameter(s: &str) -> Result<SweepParameter, String> {
    SweepParameter::from_str(s).map_err(|e| e.to_string())
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(args) => {
            let config = ExperimentConfig {
                profile_path: args.profile,
                trace: args.trace.to_input()?,
                policies: vec![args.policy],
                sweep: None,
                out_path: args.out.clone(),
                seed: args.seed,
                solver: args.solver.to_options(),
            };
            let summary = cmd_run(&config)?;
            println!("policy {} over {} slots -> {}", args.policy, summary.slots, args.out.display());
            print!("{summary}");
        }
        Command::Compare(args) => {
            let config = ExperimentConfig {
                profile_path: args.profile,
                trace: args.trace.to_input()?,
                policies: args.policies,
                sweep: None,
                out_path: args.out.clone(),
                seed: args.seed,
                solver: args.solver.to_options(),
            };
            let rows = cmd_compare(&config)?;
            println!(
                "{:<18} {:>12} {:>12} {:>14} {:>9} {:>7}",
                "policy", "latency_ms", "accuracy_%", "objective", "reconfig", "holds"
            );
            for row in &rows {
                println!(
                    "{:<18} {:>12.4} {:>12.2} {:>14.6} {:>9} {:>7}",
                    row.policy.to_string(),
                    row.summary.mean_latency_s * 1e3,
                    row.summary.mean_accuracy * 100.0,
                    row.summary.mean_objective,
                    row.summary.reconfigurations,
                    row.summary.infeasible_holds,
                );
            }
            println!("wrote {}", args.out.display());
        }
        Command::Sweep(args) => {
            let values = match (args.values.is_empty(), args.sweep) {
                (true, SweepParameter::Bandwidth) => vec![20.0, 40.0, 60.0, 80.0, 100.0],
                (true, _) => {
                    return Err(Error::Usage(
                        "--values is required for omega and l-max sweeps".into(),
                    ))
                }
                (false, _) => args.values.clone(),
            };
            // Convert from CLI units to base units.
            let values: Vec<f64> = values
                .iter()
                .map(|&v| match args.sweep {
                    SweepParameter::Omega => v,
                    SweepParameter::LMax => v / 1e3,
                    SweepParameter::Bandwidth => v * MBPS,
                })
                .collect();
            let config = ExperimentConfig {
                profile_path: args.profile,
                trace: args.trace.to_input()?,
                policies: args.policies,
                sweep: Some(SweepSpec {
                    parameter: args.sweep,
                    values,
                }),
                out_path: args.out.clone(),
                seed: args.seed,
                solver: args.solver.to_options(),
            };
            let rows = cmd_sweep(&config)?;
            println!("{} rows -> {}", rows.len(), args.out.display());
        }
        Command::Fit(args) => {
            let samples = profiler::load_samples(&args.samples)?;
            let fit = profiler::fit_accuracy_curve(&samples)?;
            println!("c2 = {}", fit.c2);
            println!("c1 = {}", fit.c1);
            println!("c0 = {}", fit.c0);
            println!("mse = {}", fit.mse);
        }
        Command::Score(args) => {
            let detected = evaluation::load_detections(&args.detected)?;
            let golden = evaluation::load_detections(&args.golden)?;
            for (d, g) in detected.iter().zip(&golden) {
                let (tp, fp, false_neg) = evaluation::match_frame(d, g, args.iou_min)?;
                println!(
                    "frame {}: tp={} fp={} fn={} f1={:.6}",
                    d.frame_id,
                    tp,
                    fp,
                    false_neg,
                    evaluation::f1(tp, fp, false_neg)
                );
            }
            let mean = evaluation::video_accuracy(&detected, &golden, args.iou_min)?;
            println!("video accuracy (mean F1): {mean:.6}");
        }
        Command::GenTrace(args) => {
            let spec = args.trace.to_spec()?;
            let trace = cmd_gen_trace(&spec, args.seed, &args.out)?;
            println!("{} slots ({}) -> {}", trace.len(), trace.source, args.out.display());
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => 2,
        Error::Io(_) => 3,
        Error::Parse(_) | Error::Json(_) | Error::Invariant { .. } => 4,
        Error::StartupInfeasible(_) => 5,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
