//! Measure the greedy solver against exhaustive enumeration on random
//! instances: objective gap distribution and work counters.
//!
//! ```bash
//! cargo run -p cans --example solver_gap
//! ```

use cans::model::{AccuracyCurve, DetectionModel, GlobalParams, ProcLatencyTable, VideoStream};
use cans::optimizer::{
    objective, solve_bruteforce, solve_cans_with_stats, ProblemInstance, SolverOptions,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LADDER: [u32; 5] = [360, 540, 720, 900, 1080];

fn random_instance(rng: &mut ChaCha8Rng) -> ProblemInstance {
    let k = rng.gen_range(2..=4);
    let n = rng.gen_range(2..=3);
    let l_max = rng.gen_range(0.03..0.10);
    let streams = (0..k)
        .map(|i| {
            VideoStream::new(
                (i + 1) as u32,
                *[15.0, 25.0, 30.0].get(rng.gen_range(0..3)).unwrap(),
                rng.gen_range(0.5..4.0),
                l_max + rng.gen_range(0.0..0.04),
                LADDER.to_vec(),
            )
            .unwrap()
        })
        .collect();
    let models = (0..n)
        .map(|j| {
            let base = rng.gen_range(0.002..0.02);
            let growth = rng.gen_range(1.15..1.6);
            let mut value = base;
            let points: Vec<(u32, f64)> = LADDER
                .iter()
                .map(|&r| {
                    let p = (r, value);
                    value *= growth;
                    p
                })
                .collect();
            let vertex = rng.gen_range(700.0..1600.0);
            let peak = rng.gen_range(40.0..99.0);
            let c2 = -rng.gen_range(2e-5..2.5e-4);
            DetectionModel::new(
                (j + 1) as u32,
                ProcLatencyTable::from_points(points).unwrap(),
                AccuracyCurve::new(c2, -2.0 * c2 * vertex, peak + c2 * vertex * vertex),
            )
            .unwrap()
        })
        .collect();
    ProblemInstance {
        streams,
        models,
        params: GlobalParams {
            alpha: 8.0,
            omega: rng.gen_range(0.5..8.0),
            bandwidth: rng.gen_range(20e6..100e6),
            l_max,
            reconfig_threshold: 0.1,
            iou_min: 0.7,
        },
    }
}

fn main() -> cans::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = SolverOptions::default();

    let mut gaps: Vec<f64> = Vec::new();
    let mut infeasible = 0usize;
    let mut max_scans = 0usize;
    let mut repairs = 0usize;
    for _ in 0..400 {
        let instance = random_instance(&mut rng);
        let exact = solve_bruteforce(&instance, &opts)?;
        let (greedy, stats) = solve_cans_with_stats(&instance, &opts)?;
        max_scans = max_scans.max(stats.scan_pairs);
        repairs += stats.repair_steps;
        match (exact, greedy) {
            (Some(exact), Some(greedy)) => {
                let jb = objective(&instance, &exact, &opts)?;
                let jc = objective(&instance, &greedy, &opts)?;
                gaps.push((jc - jb) / jb.abs().max(1e-9));
            }
            _ => infeasible += 1,
        }
    }

    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let at = |q: f64| gaps[(q * (gaps.len() - 1) as f64) as usize];
    let exact_share = gaps.iter().filter(|&&g| g <= 1e-12).count() as f64 / gaps.len() as f64;
    println!("instances:        400 ({} infeasible)", infeasible);
    println!("greedy == exact:  {:.1} %", exact_share * 100.0);
    println!("gap median:       {:.4} %", at(0.5) * 100.0);
    println!("gap p95:          {:.4} %", at(0.95) * 100.0);
    println!("gap max:          {:.4} %", at(1.0) * 100.0);
    println!("max pairs scanned: {max_scans} (bound {})", 4 * LADDER.len() * 3);
    println!("total repair steps: {repairs}");
    Ok(())
}
