//! Score detections against the golden configuration's detections with the
//! IOU/F1 metric.
//!
//! ```bash
//! cargo run -p cans --example score_detections
//! ```

use cans::evaluation::{f1, iou, match_frame, video_accuracy, BoundingBox, FrameDetections};

fn main() -> cans::Result<()> {
    // Golden configuration: what the most expensive knob setting detected.
    let golden = vec![
        FrameDetections {
            frame_id: 0,
            boxes: vec![
                BoundingBox::new(100.0, 80.0, 180.0, 240.0)?,
                BoundingBox::new(400.0, 120.0, 470.0, 260.0)?,
            ],
        },
        FrameDetections {
            frame_id: 1,
            boxes: vec![BoundingBox::new(110.0, 82.0, 188.0, 245.0)?],
        },
    ];

    // A cheaper configuration: boxes drift a little and one object is lost.
    let detected = vec![
        FrameDetections {
            frame_id: 0,
            boxes: vec![
                BoundingBox::new(104.0, 84.0, 183.0, 244.0)?,
                BoundingBox::new(600.0, 300.0, 650.0, 380.0)?,
            ],
        },
        FrameDetections {
            frame_id: 1,
            boxes: vec![BoundingBox::new(112.0, 85.0, 190.0, 248.0)?],
        },
    ];

    let sample = iou(&detected[0].boxes[0], &golden[0].boxes[0]);
    println!("IOU of the drifted box against its golden twin: {sample:.3}");

    let iou_min = 0.7;
    for (d, g) in detected.iter().zip(&golden) {
        let (tp, fp, false_neg) = match_frame(d, g, iou_min)?;
        println!(
            "frame {}: tp={tp} fp={fp} fn={false_neg} -> F1 {:.3}",
            d.frame_id,
            f1(tp, fp, false_neg)
        );
    }
    println!(
        "video accuracy (mean F1): {:.3}",
        video_accuracy(&detected, &golden, iou_min)?
    );
    Ok(())
}
