//! The running example: bandwidth drops 20% at slots 5, 10, and 15, and the
//! adaptive policy downgrades the least important stream's resolution while
//! the high-priority streams keep theirs.
//!
//! ```bash
//! cargo run -p cans --example adaptation_steps
//! ```

use std::path::PathBuf;

use cans::optimizer::{Policy, SolverOptions};
use cans::profiler::load_profiles;
use cans::simulator::{generate_trace, run, TraceSpec};

fn main() -> cans::Result<()> {
    let profile = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("profiles/paper_like.json");
    let instance = load_profiles(&profile)?;

    let spec = TraceSpec::Steps {
        levels: vec![30e6, 24e6, 19.2e6, 15.36e6],
        change_slots: vec![5, 10, 15],
        total_slots: 20,
    };
    let trace = generate_trace(&spec, 0)?;
    let records = run(&instance, &trace, Policy::Cans, &SolverOptions::default())?;

    println!("slot  bandwidth   trigger  per-stream (resolution @ model)");
    for r in &records {
        let config: Vec<String> = r
            .assignment
            .choices
            .iter()
            .map(|c| format!("{}p@m{}", c.resolution, instance.models[c.model].id))
            .collect();
        println!(
            "{:>4}  {:>7.2} M  {:>7}  {}",
            r.slot,
            r.bandwidth_bps / 1e6,
            if r.reconfigured { "resolve" } else { "-" },
            config.join("  ")
        );
    }

    let triggers: Vec<usize> = records
        .iter()
        .filter(|r| r.reconfigured)
        .map(|r| r.slot)
        .collect();
    println!("\nreconfigured at slots {triggers:?}");
    Ok(())
}
