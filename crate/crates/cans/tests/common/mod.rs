//! Shared test support: the bundled reference fixture and a seeded random
//! instance generator.

// Each test binary uses a different subset of these helpers.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cans::model::{AccuracyCurve, DetectionModel, GlobalParams, ProcLatencyTable, VideoStream};
use cans::optimizer::ProblemInstance;
use cans::profiler;

pub const LADDER: [u32; 5] = [360, 540, 720, 900, 1080];

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("profiles/paper_like.json")
}

/// The bundled 3-stream, 3-model fixture used by the shape criteria.
pub fn paper_like() -> ProblemInstance {
    profiler::load_profiles(fixture_path()).expect("bundled fixture loads")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random but well-formed instance on the 5-rung ladder: up to `max_k`
/// streams and `max_n` models, bandwidth in the 20..100 Mbps span. High
/// rungs frequently violate the realtime or deadline bounds and the budget
/// often cannot carry everyone's best choice, so admissibility filtering,
/// bandwidth contention, and the repair pass all get exercised.
pub fn random_instance(rng: &mut ChaCha8Rng, max_k: usize, max_n: usize) -> ProblemInstance {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(1..=max_n);
    let l_max = rng.gen_range(0.030..0.100);

    let streams = (0..k)
        .map(|i| {
            let framerate = *[15.0, 25.0, 30.0].get(rng.gen_range(0..3)).unwrap();
            VideoStream::new(
                (i + 1) as u32,
                framerate,
                rng.gen_range(0.5..4.0),
                l_max + rng.gen_range(0.0..0.040),
                LADDER.to_vec(),
            )
            .unwrap()
        })
        .collect();

    let models = (0..n)
        .map(|j| {
            // Processing latency grows with resolution; the base and growth
            // ranges let some models break the realtime bound at high rungs.
            let base = rng.gen_range(0.002..0.020);
            let growth = rng.gen_range(1.15..1.6);
            let mut proc = Vec::with_capacity(LADDER.len());
            let mut value = base;
            for &r in &LADDER {
                proc.push((r, value));
                value *= growth;
            }
            // Concave accuracy curve with a vertex somewhere realistic.
            let vertex = rng.gen_range(700.0..1600.0);
            let peak = rng.gen_range(40.0..99.0);
            let c2 = -rng.gen_range(2e-5..2.5e-4);
            let c1 = -2.0 * c2 * vertex;
            let c0 = peak + c2 * vertex * vertex;
            DetectionModel::new(
                (j + 1) as u32,
                ProcLatencyTable::from_points(proc).unwrap(),
                AccuracyCurve::new(c2, c1, c0),
            )
            .unwrap()
        })
        .collect();

    let instance = ProblemInstance {
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
    };
    instance.validate().unwrap();
    instance
}
