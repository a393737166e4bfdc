//! Fit a quadratic accuracy curve to profiled samples and plug it into a
//! detection model.
//!
//! ```bash
//! cargo run -p cans --example fit_accuracy_curve
//! ```

use cans::model::AccuracyCurve;
use cans::profiler::{fit_accuracy_curve, AccuracySample};

fn main() -> cans::Result<()> {
    // Accuracy measured at each ladder rung for one detector.
    let samples = vec![
        AccuracySample::new(360.0, 22.4)?,
        AccuracySample::new(540.0, 49.8)?,
        AccuracySample::new(720.0, 64.1)?,
        AccuracySample::new(900.0, 65.2)?,
        AccuracySample::new(1080.0, 54.0)?,
    ];

    let fit = fit_accuracy_curve(&samples)?;
    println!("fitted curve: a(r) = {:.6e} r^2 + {:.6} r + {:.4}", fit.c2, fit.c1, fit.c0);
    println!("mse over samples: {:.6}", fit.mse);

    let curve = AccuracyCurve::new(fit.c2, fit.c1, fit.c0);
    println!("peak resolution (vertex): {:.0}px", curve.vertex());
    println!("\n  r      measured   fitted");
    for s in &samples {
        println!(
            "  {:>4}   {:>8.2}   {:>6.2}",
            s.resolution,
            s.accuracy,
            curve.evaluate(s.resolution)
        );
    }
    Ok(())
}
