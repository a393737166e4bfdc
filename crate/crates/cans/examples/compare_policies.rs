//! Compare the four policies on the bundled fixture at a constant 100 Mbps:
//! the adaptive solver sits between the delay-optimal and accuracy-optimal
//! extremes on both latency and accuracy.
//!
//! ```bash
//! cargo run -p cans --example compare_policies
//! ```

use std::path::PathBuf;

use cans::optimizer::{Policy, SolverOptions};
use cans::profiler::load_profiles;
use cans::simulator::{aggregate, run, BandwidthTrace, TraceSource};

fn main() -> cans::Result<()> {
    let profile = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("profiles/paper_like.json");
    let instance = load_profiles(&profile)?;
    let trace = BandwidthTrace::new(vec![100e6; 20], TraceSource::Steps)?;
    let opts = SolverOptions::default();
    let ids: Vec<u32> = instance.streams.iter().map(|s| s.id).collect();

    println!(
        "{:<18} {:>12} {:>12} {:>14}",
        "policy", "latency_ms", "accuracy_%", "objective"
    );
    for policy in Policy::ALL {
        let records = run(&instance, &trace, policy, &opts)?;
        let summary = aggregate(&records, &ids)?;
        println!(
            "{:<18} {:>12.4} {:>12.2} {:>14.6}",
            policy.to_string(),
            summary.mean_latency_s * 1e3,
            summary.mean_accuracy * 100.0,
            summary.mean_objective
        );
    }
    Ok(())
}
