//! Detection-quality scoring: IOU matching and F1 against a golden
//! configuration.
//!
//! Ground truth comes from the most expensive configuration's detections
//! (the golden configuration) rather than manual annotation. A detection is
//! a true positive when its best available IOU with an unmatched golden box
//! strictly exceeds the threshold; matching is greedy in descending IOU,
//! which is the conventional deterministic choice for detection evaluation.
//! A video's accuracy is the unweighted mean of per-frame F1 scores.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fsio;

/// Axis-aligned bounding box, pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        let proper = x_max > x_min && y_max > y_min;
        if !proper {
            return Err(Error::invariant(
                "box",
                format!("degenerate box ({x_min},{y_min})..({x_max},{y_max})"),
            ));
        }
        Ok(Self {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }
}

/// Intersection area over union area; 0 for disjoint boxes, 1 for identical.
pub fn iou(a: &BoundingBox, b: &BoundingBox) -> f64 {
    let ix = (a.x_max.min(b.x_max) - a.x_min.max(b.x_min)).max(0.0);
    let iy = (a.y_max.min(b.y_max) - a.y_min.max(b.y_min)).max(0.0);
    let inter = ix * iy;
    if inter <= 0.0 {
        return 0.0;
    }
    inter / (a.area() + b.area() - inter)
}

/// All detections of one video frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameDetections {
    pub frame_id: u64,
    pub boxes: Vec<BoundingBox>,
}

/// Greedy one-to-one matching of detected boxes against golden boxes.
///
/// Pairs are taken in descending IOU order (ties to the lower detected
/// index, then the lower golden index) and count as true positives when
/// their IOU strictly exceeds `iou_min`. Returns `(tp, fp, fn)`.
pub fn match_frame(
    detected: &FrameDetections,
    golden: &FrameDetections,
    iou_min: f64,
) -> Result<(usize, usize, usize)> {
    if detected.frame_id != golden.frame_id {
        return Err(Error::Usage(format!(
            "frame id mismatch: detected {} vs golden {}",
            detected.frame_id, golden.frame_id
        )));
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (d, dbox) in detected.boxes.iter().enumerate() {
        for (g, gbox) in golden.boxes.iter().enumerate() {
            let overlap = iou(dbox, gbox);
            if overlap > iou_min {
                pairs.push((overlap, d, g));
            }
        }
    }
    pairs.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("iou is finite")
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let mut detected_used = vec![false; detected.boxes.len()];
    let mut golden_used = vec![false; golden.boxes.len()];
    let mut tp = 0usize;
    for (_, d, g) in pairs {
        if detected_used[d] || golden_used[g] {
            continue;
        }
        detected_used[d] = true;
        golden_used[g] = true;
        tp += 1;
    }
    Ok((tp, detected.boxes.len() - tp, golden.boxes.len() - tp))
}

/// Harmonic mean of precision and recall. A frame with nothing detected and
/// nothing to detect scores 1 (the detector was right to stay silent); any
/// error without a single true positive scores 0.
pub fn f1(tp: usize, fp: usize, false_neg: usize) -> f64 {
    if tp == 0 {
        return if fp == 0 && false_neg == 0 { 1.0 } else { 0.0 };
    }
    let precision = tp as f64 / (tp + fp) as f64;
    let recall = tp as f64 / (tp + false_neg) as f64;
    2.0 * precision * recall / (precision + recall)
}

/// Mean per-frame F1 of a detection sequence against the golden sequence.
/// Both sequences must cover exactly the same frame ids.
pub fn video_accuracy(
    detected: &[FrameDetections],
    golden: &[FrameDetections],
    iou_min: f64,
) -> Result<f64> {
    let by_id = |frames: &[FrameDetections]| -> Result<BTreeMap<u64, FrameDetections>> {
        let mut map = BTreeMap::new();
        for f in frames {
            if map.insert(f.frame_id, f.clone()).is_some() {
                return Err(Error::Usage(format!("duplicate frame id {}", f.frame_id)));
            }
        }
        Ok(map)
    };
    let detected = by_id(detected)?;
    let golden = by_id(golden)?;
    if detected.is_empty() {
        return Err(Error::Usage("no frames to score".into()));
    }
    let detected_ids: Vec<u64> = detected.keys().copied().collect();
    let golden_ids: Vec<u64> = golden.keys().copied().collect();
    if detected_ids != golden_ids {
        return Err(Error::Usage(format!(
            "frame id sets differ: detected has {} frames, golden has {}",
            detected_ids.len(),
            golden_ids.len()
        )));
    }
    let mut total = 0.0;
    for (id, d) in &detected {
        let (tp, fp, false_neg) = match_frame(d, &golden[id], iou_min)?;
        total += f1(tp, fp, false_neg);
    }
    Ok(total / detected.len() as f64)
}

pub const DETECTIONS_CSV_HEADER: &str = "frame_id,x_min,y_min,x_max,y_max";

/// Renders detections as `frame_id,x_min,y_min,x_max,y_max` CSV, one row per
/// box.
pub fn detections_csv(frames: &[FrameDetections]) -> String {
    let mut out = String::from(DETECTIONS_CSV_HEADER);
    out.push('\n');
    for frame in frames {
        for b in &frame.boxes {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                frame.frame_id, b.x_min, b.y_min, b.x_max, b.y_max
            ));
        }
    }
    out
}

/// Parses a detections CSV, grouping boxes by frame id (ascending).
pub fn parse_detections_csv(text: &str) -> Result<Vec<FrameDetections>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == DETECTIONS_CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse(format!(
                "expected header '{DETECTIONS_CSV_HEADER}', got '{header}'"
            )))
        }
        None => return Err(Error::Parse("empty detections file".into())),
    }
    let mut by_frame: BTreeMap<u64, Vec<BoundingBox>> = BTreeMap::new();
    for (n, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::Parse(format!(
                "line {}: expected 5 fields, got {}",
                n + 1,
                fields.len()
            )));
        }
        let frame_id: u64 = fields[0]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: frame_id: {e}", n + 1)))?;
        let mut coords = [0.0f64; 4];
        for (k, field) in fields[1..].iter().enumerate() {
            coords[k] = field
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: coordinate: {e}", n + 1)))?;
        }
        let bbox = BoundingBox::new(coords[0], coords[1], coords[2], coords[3])
            .map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
        by_frame.entry(frame_id).or_default().push(bbox);
    }
    Ok(by_frame
        .into_iter()
        .map(|(frame_id, boxes)| FrameDetections { frame_id, boxes })
        .collect())
}

/// Loads a detections CSV from disk.
pub fn load_detections(path: impl AsRef<Path>) -> Result<Vec<FrameDetections>> {
    let text = fsio::read_file(path.as_ref())?;
    parse_detections_csv(&text)
}

/// Writes a detections CSV (atomic replace).
pub fn save_detections(path: impl AsRef<Path>, frames: &[FrameDetections]) -> Result<()> {
    fsio::write_atomic(path.as_ref(), &detections_csv(frames))
}
