//! Simulate the adaptive policy over a seeded bandwidth walk and write the
//! timeline CSV.
//!
//! ```bash
//! cargo run -p cans --example run_simulation
//! ```

use std::path::PathBuf;

use cans::optimizer::{Policy, SolverOptions};
use cans::profiler::load_profiles;
use cans::simulator::{aggregate, generate_trace, run, timeline_csv, TraceSpec};

fn main() -> cans::Result<()> {
    let profile = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("profiles/paper_like.json");
    let instance = load_profiles(&profile)?;

    let spec = TraceSpec::RandomWalk {
        total_slots: 60,
        b_min: 20e6,
        b_max: 100e6,
        start: 60e6,
        max_step: 8e6,
    };
    let trace = generate_trace(&spec, 42)?;

    let opts = SolverOptions::default();
    let records = run(&instance, &trace, Policy::Cans, &opts)?;

    println!("slot  bandwidth  reconfig  resolutions      objective");
    for r in records.iter().take(12) {
        let resolutions: Vec<u32> = r.assignment.choices.iter().map(|c| c.resolution).collect();
        println!(
            "{:>4}  {:>6.1} M  {:>8}  {:?}  {:>10.4}",
            r.slot,
            r.bandwidth_bps / 1e6,
            r.reconfigured,
            resolutions,
            r.objective
        );
    }
    println!("... ({} slots total)", records.len());

    let ids: Vec<u32> = instance.streams.iter().map(|s| s.id).collect();
    println!("\n{}", aggregate(&records, &ids)?);

    let out = std::env::temp_dir().join("cans_timeline.csv");
    std::fs::write(&out, timeline_csv(&records, &instance))?;
    println!("timeline written to {}", out.display());
    Ok(())
}
