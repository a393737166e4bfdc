//! Build a problem instance in code, solve it once, and inspect the result.
//!
//! ```bash
//! cargo run -p cans --example configure_once
//! ```

use cans::model::{AccuracyCurve, DetectionModel, GlobalParams, ProcLatencyTable, VideoStream};
use cans::optimizer::{feasibility, objective, solve_cans, ProblemInstance, SolverOptions};

fn main() -> cans::Result<()> {
    let ladder = vec![360, 540, 720, 900, 1080];

    // Two cameras sharing a 40 Mbps uplink; the gate camera matters more
    // (lower qos weighs it higher in the objective).
    let streams = vec![
        VideoStream::new(1, 30.0, 1.0, 0.08, ladder.clone())?,
        VideoStream::new(2, 25.0, 2.0, 0.10, ladder)?,
    ];

    // A fast light detector and a slower, more accurate one.
    let models = vec![
        DetectionModel::new(
            1,
            ProcLatencyTable::from_points([
                (360, 0.006),
                (540, 0.0075),
                (720, 0.009),
                (900, 0.011),
                (1080, 0.013),
            ])?,
            AccuracyCurve::new(-0.0002, 0.3316, -71.034),
        )?,
        DetectionModel::new(
            2,
            ProcLatencyTable::from_points([
                (360, 0.014),
                (540, 0.017),
                (720, 0.020),
                (900, 0.024),
                (1080, 0.029),
            ])?,
            AccuracyCurve::new(-0.00005, 0.14, 0.0),
        )?,
    ];

    let instance = ProblemInstance {
        streams,
        models,
        params: GlobalParams {
            alpha: 8.0,
            omega: 6.0,
            bandwidth: 40e6,
            l_max: 0.08,
            reconfig_threshold: 0.10,
            iou_min: 0.7,
        },
    };
    instance.validate()?;

    let opts = SolverOptions::default();
    let assignment = solve_cans(&instance, &opts)?.expect("instance is feasible");

    println!("chosen configuration:");
    for (stream, choice) in instance.streams.iter().zip(&assignment.choices) {
        let model = &instance.models[choice.model];
        let latency = stream.end_to_end_latency(
            choice.resolution,
            model,
            instance.params.bandwidth,
            instance.params.alpha,
        )?;
        println!(
            "  stream {}: {:>4}p on model {} -> {:.3} ms, {:.2} % accuracy",
            stream.id,
            choice.resolution,
            model.id,
            latency * 1e3,
            model.accuracy(choice.resolution),
        );
    }

    let report = feasibility(&instance, &assignment, &opts)?;
    println!("feasible: {}", report.feasible);
    println!("objective: {:.6}", objective(&instance, &assignment, &opts)?);
    Ok(())
}
