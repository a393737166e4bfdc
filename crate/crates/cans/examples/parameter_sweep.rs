//! Sensitivity study: sweep the accuracy weight omega and the bandwidth,
//! writing one CSV per sweep. The exact-solver columns let you check the
//! scalarization laws (accuracy term rises with omega; the optimum never
//! worsens with more bandwidth).
//!
//! ```bash
//! cargo run -p cans --example parameter_sweep
//! ```

use std::path::PathBuf;

use cans::experiment::{cmd_sweep, ExperimentConfig, SweepParameter, SweepSpec, TraceInput};
use cans::optimizer::Policy;
use cans::simulator::TraceSpec;

fn main() -> cans::Result<()> {
    let profile = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("profiles/paper_like.json");
    let constant_100 = TraceInput::Generated(TraceSpec::Steps {
        levels: vec![100e6],
        change_slots: vec![],
        total_slots: 10,
    });

    let omega_out = std::env::temp_dir().join("cans_sweep_omega.csv");
    let mut config = ExperimentConfig::new(&profile, &omega_out);
    config.trace = constant_100.clone();
    config.policies = vec![Policy::Cans];
    config.sweep = Some(SweepSpec {
        parameter: SweepParameter::Omega,
        values: vec![0.0, 1.0, 2.0, 4.0, 6.0, 8.0],
    });
    let rows = cmd_sweep(&config)?;
    println!("omega sweep ({} rows):", rows.len());
    println!("  omega   latency_ms   accuracy_%   bf_accuracy_term");
    for row in &rows {
        println!(
            "  {:>5}   {:>10.4}   {:>10.2}   {:>16.6}",
            row.value,
            row.summary.mean_latency_s * 1e3,
            row.summary.mean_accuracy * 100.0,
            row.bf_accuracy_term.unwrap_or(f64::NAN)
        );
    }
    println!("  -> {}\n", omega_out.display());

    let bandwidth_out = std::env::temp_dir().join("cans_sweep_bandwidth.csv");
    let mut config = ExperimentConfig::new(&profile, &bandwidth_out);
    config.trace = constant_100;
    config.policies = vec![Policy::Cans, Policy::DelayChronic];
    config.sweep = Some(SweepSpec {
        parameter: SweepParameter::Bandwidth,
        values: vec![20e6, 40e6, 60e6, 80e6, 100e6],
    });
    let rows = cmd_sweep(&config)?;
    println!("bandwidth sweep ({} rows):", rows.len());
    println!("  Mbps    policy           latency_ms   accuracy_%");
    for row in &rows {
        println!(
            "  {:>4}    {:<16} {:>10.4}   {:>10.2}",
            row.value / 1e6,
            row.policy.to_string(),
            row.summary.mean_latency_s * 1e3,
            row.summary.mean_accuracy * 100.0
        );
    }
    println!("  -> {}", bandwidth_out.display());
    Ok(())
}
