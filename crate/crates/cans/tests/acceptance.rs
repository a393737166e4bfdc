//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).

mod common;

use std::time::Instant;

use cans::evaluation::{f1, iou, match_frame, BoundingBox, FrameDetections};
use cans::experiment::{cmd_run, ExperimentConfig, TraceInput};
use cans::optimizer::{
    accuracy_term, feasibility, objective, solve_bruteforce, solve_cans, Policy, SolverOptions,
};
use cans::profiler::{fit_accuracy_curve, AccuracySample};
use cans::simulator::{
    aggregate, generate_trace, run, should_reconfigure, BandwidthTrace, TraceSource, TraceSpec,
};
use rand::Rng;

/// Criterion 1: over at least 1000 randomized instances, every solver output passes
/// all constraint checks, the exhaustive optimum lower-bounds the greedy
/// one, and the greedy relative gap is within 10% on at least 95% of the
/// feasible instances.
#[test]
fn criterion_1_oracle_feasibility_and_dominance() {
    let started = Instant::now();
    let mut rng = common::rng(0xACC_0001);
    let opts = SolverOptions::default();
    let mut feasible = 0usize;
    let mut within_gap = 0usize;
    for _ in 0..1000 {
        let inst = common::random_instance(&mut rng, 4, 3);
        let exact = solve_bruteforce(&inst, &opts).unwrap();
        let greedy = solve_cans(&inst, &opts).unwrap();
        assert_eq!(exact.is_some(), greedy.is_some(), "solvers disagree on feasibility");
        let (Some(exact), Some(greedy)) = (exact, greedy) else {
            continue;
        };
        feasible += 1;
        assert!(feasibility(&inst, &exact, &opts).unwrap().feasible);
        assert!(feasibility(&inst, &greedy, &opts).unwrap().feasible);
        let jb = objective(&inst, &exact, &opts).unwrap();
        let jc = objective(&inst, &greedy, &opts).unwrap();
        assert!(jb <= jc + 1e-12 * jb.abs().max(1.0), "oracle dominance violated");
        let gap = if jb.abs() > 1e-9 {
            (jc - jb) / jb.abs()
        } else {
            (jc - jb).abs()
        };
        if gap <= 0.10 {
            within_gap += 1;
        }
    }
    assert!(feasible >= 300, "too few feasible instances: {feasible}");
    let share = within_gap as f64 / feasible as f64;
    assert!(
        share >= 0.95,
        "greedy within 10% on only {within_gap}/{feasible} = {share:.3}"
    );
    assert!(started.elapsed().as_secs() < 60);
    println!(
        "criterion 1 (oracle feasibility & dominance): PASS ({feasible} feasible, {:.1}% within gap)",
        share * 100.0
    );
}

/// Criterion 2: for single-stream instances the greedy solver equals the exhaustive
/// solver exactly, on 100% of 500 random instances.
#[test]
fn criterion_2_single_stream_exactness() {
    let started = Instant::now();
    let mut rng = common::rng(0xACC_0002);
    let opts = SolverOptions::default();
    for i in 0..500 {
        let inst = common::random_instance(&mut rng, 1, 3);
        let exact = solve_bruteforce(&inst, &opts).unwrap();
        let greedy = solve_cans(&inst, &opts).unwrap();
        assert_eq!(exact, greedy, "divergence on instance {i}");
    }
    assert!(started.elapsed().as_secs() < 5);
    println!("criterion 2 (single-stream exactness): PASS (500/500)");
}

/// Criterion 3: monotonicity laws of the exact solver over 100 random instances each:
/// the accuracy term is non-decreasing in omega, and the optimal objective
/// is non-increasing in bandwidth and in the deadline bound.
#[test]
fn criterion_3_monotonicity_laws() {
    let started = Instant::now();
    let opts = SolverOptions::default();

    let mut rng = common::rng(0xACC_0003);
    let mut omega_checked = 0usize;
    for _ in 0..100 {
        let base = common::random_instance(&mut rng, 3, 3);
        let mut previous: Option<f64> = None;
        for omega in [0.0, 1.0, 2.0, 4.0, 6.0, 8.0] {
            let mut inst = base.clone();
            inst.params.omega = omega;
            let Some(best) = solve_bruteforce(&inst, &opts).unwrap() else {
                break; // feasibility does not depend on omega
            };
            let term = accuracy_term(&inst, &best, &opts).unwrap();
            if let Some(prev) = previous {
                assert!(term >= prev - 1e-12, "accuracy term fell: {prev} -> {term}");
                omega_checked += 1;
            }
            previous = Some(term);
        }
    }
    assert!(omega_checked >= 100, "too few omega comparisons: {omega_checked}");

    let sweep = |values: &[f64], apply: fn(&mut cans::ProblemInstance, f64), seed: u64| {
        let mut rng = common::rng(seed);
        for _ in 0..100 {
            let base = common::random_instance(&mut rng, 3, 3);
            let mut previous = f64::INFINITY;
            for &v in values {
                let mut inst = base.clone();
                apply(&mut inst, v);
                let value = match solve_bruteforce(&inst, &opts).unwrap() {
                    Some(best) => objective(&inst, &best, &opts).unwrap(),
                    None => f64::INFINITY,
                };
                assert!(
                    value <= previous + 1e-12 * previous.abs().clamp(1.0, 1e300),
                    "objective rose: {previous} -> {value} at {v}"
                );
                previous = value;
            }
        }
    };
    sweep(&[20e6, 40e6, 60e6, 80e6, 100e6], |i, v| i.params.bandwidth = v, 0xACC_0013);
    sweep(&[0.020, 0.040, 0.080, 0.160], |i, v| i.params.l_max = v, 0xACC_0023);

    assert!(started.elapsed().as_secs() < 60);
    println!("criterion 3 (monotonicity laws): PASS");
}

/// Criterion 4: policy ordering on the bundled fixture at a constant 100 Mbps: mean
/// latency DelayOptimal <= CANS <= DelayChronic <= AccuracyOptimal and mean
/// accuracy in the reverse order.
#[test]
fn criterion_4_policy_ordering() {
    let started = Instant::now();
    let instance = common::paper_like();
    let trace = BandwidthTrace::new(vec![100e6; 10], TraceSource::Steps).unwrap();
    let opts = SolverOptions::default();
    let ids: Vec<u32> = instance.streams.iter().map(|s| s.id).collect();

    let summarize = |policy: Policy| {
        let records = run(&instance, &trace, policy, &opts).unwrap();
        aggregate(&records, &ids).unwrap()
    };
    let cans = summarize(Policy::Cans);
    let accuracy_optimal = summarize(Policy::AccuracyOptimal);
    let delay_optimal = summarize(Policy::DelayOptimal);
    let delay_chronic = summarize(Policy::DelayChronic);

    let latencies = [
        delay_optimal.mean_latency_s,
        cans.mean_latency_s,
        delay_chronic.mean_latency_s,
        accuracy_optimal.mean_latency_s,
    ];
    assert!(
        latencies.windows(2).all(|w| w[0] <= w[1]),
        "latency ordering violated: {latencies:?}"
    );
    let accuracies = [
        accuracy_optimal.mean_accuracy,
        cans.mean_accuracy,
        delay_chronic.mean_accuracy,
        delay_optimal.mean_accuracy,
    ];
    assert!(
        accuracies.windows(2).all(|w| w[0] >= w[1]),
        "accuracy ordering violated: {accuracies:?}"
    );
    assert!(started.elapsed().as_secs() < 1);
    println!(
        "criterion 4 (policy ordering): PASS (latency ms {:?}, accuracy % {:?})",
        latencies.map(|l| (l * 1e5).round() / 1e2),
        accuracies.map(|a| (a * 1e4).round() / 1e2)
    );
}

/// Criterion 5, adaptation: under a step trace dropping 20% at slots 5, 10, and 15,
/// the adaptive policy reconfigures exactly at those slots (plus slot 0)
/// and no stream's resolution increases at a drop slot.
#[test]
fn criterion_5_adaptation_to_bandwidth_drops() {
    let started = Instant::now();
    let instance = common::paper_like();
    let spec = TraceSpec::Steps {
        levels: vec![30e6, 24e6, 19.2e6, 15.36e6],
        change_slots: vec![5, 10, 15],
        total_slots: 20,
    };
    let trace = generate_trace(&spec, 0).unwrap();
    let records = run(&instance, &trace, Policy::Cans, &SolverOptions::default()).unwrap();

    let reconfigured: Vec<usize> = records
        .iter()
        .filter(|r| r.reconfigured)
        .map(|r| r.slot)
        .collect();
    assert_eq!(reconfigured, vec![0, 5, 10, 15]);
    assert!(records.iter().all(|r| !r.held && r.feasible));

    for &drop in &[5usize, 10, 15] {
        let before = &records[drop - 1].assignment;
        let after = &records[drop].assignment;
        for (b, a) in before.choices.iter().zip(&after.choices) {
            assert!(
                a.resolution <= b.resolution,
                "slot {drop}: resolution rose from {} to {}",
                b.resolution,
                a.resolution
            );
        }
    }
    // The drops do bite: the least important stream ends lower than it began.
    let first = records[0].assignment.choices.last().unwrap().resolution;
    let last = records[19].assignment.choices.last().unwrap().resolution;
    assert!(last < first, "expected a visible downshift, got {first} -> {last}");
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 5 (adaptation to bandwidth drops): PASS (reconfigured at {reconfigured:?})");
}

/// Criterion 6: fitting samples of the reference quadratic at the 5-point ladder
/// recovers (-0.0002, 0.3316, -71.034) within 1e-6 with mse below 1e-9.
#[test]
fn criterion_6_accuracy_curve_round_trip() {
    let started = Instant::now();
    let (c2, c1, c0) = (-0.0002, 0.3316, -71.034);
    let samples: Vec<AccuracySample> = [360.0f64, 540.0, 720.0, 900.0, 1080.0]
        .iter()
        .map(|&r| AccuracySample::new(r, c2 * r * r + c1 * r + c0).unwrap())
        .collect();
    let fit = fit_accuracy_curve(&samples).unwrap();
    assert!((fit.c2 - c2).abs() < 1e-6, "c2 = {}", fit.c2);
    assert!((fit.c1 - c1).abs() < 1e-6, "c1 = {}", fit.c1);
    assert!((fit.c0 - c0).abs() < 1e-6, "c0 = {}", fit.c0);
    assert!(fit.mse < 1e-9, "mse = {}", fit.mse);
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 6 (accuracy-curve round trip): PASS (mse = {:.2e})", fit.mse);
}

/// Criterion 7: the reconfiguration trigger fires exactly on deviations strictly
/// above 10%.
#[test]
fn criterion_7_trigger_arithmetic() {
    let started = Instant::now();
    let reference = 100e6;
    let cases = [
        (-0.05, false),
        (0.05, false),
        (-0.0999, false),
        (0.0999, false),
        (-0.1001, true),
        (0.1001, true),
        (-0.20, true),
        (0.20, true),
    ];
    for (delta, expected) in cases {
        let now = reference * (1.0 + delta);
        assert_eq!(
            should_reconfigure(now, reference, 0.10),
            expected,
            "delta {delta}"
        );
    }
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 7 (trigger arithmetic): PASS");
}

/// Criterion 8, evaluation math: IOU/match/F1 invariants over 10,000 random box pairs
/// plus the exact derived cases.
#[test]
fn criterion_8_evaluation_math() {
    let started = Instant::now();
    let mut rng = common::rng(0xACC_0008);
    let mut random_box = |limit: f64| {
        let x = rng.gen_range(0.0..limit);
        let y = rng.gen_range(0.0..limit);
        let w = rng.gen_range(0.1..limit / 2.0);
        let h = rng.gen_range(0.1..limit / 2.0);
        BoundingBox::new(x, y, x + w, y + h).unwrap()
    };
    for _ in 0..10_000 {
        let a = random_box(100.0);
        let b = random_box(100.0);
        let ab = iou(&a, &b);
        assert!((0.0..=1.0).contains(&ab));
        assert_eq!(ab, iou(&b, &a));
        assert_eq!(iou(&a, &a), 1.0);

        let d = FrameDetections { frame_id: 0, boxes: vec![a, b] };
        let g = FrameDetections { frame_id: 0, boxes: vec![b] };
        let (tp, fp, false_neg) = match_frame(&d, &g, 0.7).unwrap();
        assert_eq!(tp + fp, 2);
        assert_eq!(tp + false_neg, 1);
        let score = f1(tp, fp, false_neg);
        assert!((0.0..=1.0).contains(&score));
    }

    // Derived exact cases: IOU 1/3 and F1 2/3.
    let a = BoundingBox::new(0.0, 0.0, 10.0, 10.0).unwrap();
    let b = BoundingBox::new(0.0, 5.0, 10.0, 15.0).unwrap();
    assert!((iou(&a, &b) - 1.0 / 3.0).abs() < 1e-12);
    assert!((f1(3, 1, 2) - 2.0 / 3.0).abs() < 1e-12);

    assert!(started.elapsed().as_secs() < 5);
    println!("criterion 8 (evaluation math): PASS (10000 pairs)");
}

/// Criterion 9, determinism: two runs with identical profile, trace, seed, and policy
/// produce byte-identical timeline CSVs.
#[test]
fn criterion_9_byte_identical_reruns() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    let config = |out: &std::path::Path| ExperimentConfig {
        profile_path: common::fixture_path(),
        trace: TraceInput::Generated(TraceSpec::RandomWalk {
            total_slots: 50,
            b_min: 20e6,
            b_max: 100e6,
            start: 60e6,
            max_step: 8e6,
        }),
        policies: vec![Policy::Cans],
        sweep: None,
        out_path: out.to_path_buf(),
        seed: 7,
        solver: SolverOptions::default(),
    };
    let summary_a = cmd_run(&config(&out_a)).unwrap();
    let summary_b = cmd_run(&config(&out_b)).unwrap();
    assert_eq!(summary_a, summary_b);
    let bytes_a = std::fs::read(&out_a).unwrap();
    let bytes_b = std::fs::read(&out_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "reruns produced different CSV bytes");
    assert!(!bytes_a.is_empty());
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 9 (deterministic reruns): PASS ({} bytes)", bytes_a.len());
}
