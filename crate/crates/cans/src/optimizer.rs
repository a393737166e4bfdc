//! Configuration optimization: constraints, objective, the greedy solver,
//! an exhaustive oracle, and the baseline policies.
//!
//! The decision problem: pick, for every stream `i`, a resolution `r_i` from
//! its ladder and one detection model `j_i`, minimizing
//!
//! ```text
//! J = sum_i (1/q_i) * (l_i - omega * a_i)
//! ```
//!
//! subject to
//!
//! ```text
//! (deadline)    l_i                  <= l_max      for every stream
//! (realtime)    l_proc(r_i, j_i)     <= 1/f_i      for every stream
//! (bandwidth)   sum_i alpha * r_i^2  <= b
//! ```
//!
//! where `l_i` is end-to-end latency (seconds) and `a_i` the accuracy of the
//! chosen pair. Accuracy enters the objective as a fraction in [0, 1] by
//! default; [`AccuracyUnits::Percent`] switches to raw percent for
//! sensitivity studies. With `omega = 6` and fraction units, one full unit
//! of accuracy is worth six seconds of latency.
//!
//! Two solvers share identical candidate evaluation and tie-breaking:
//!
//! * [`solve_bruteforce`] enumerates every assignment below a configurable
//!   cap and is the exact reference. Cost grows as `(|ladder| * N)^K`.
//! * [`solve_cans`] is the greedy heuristic: the objective is separable per
//!   stream and only the bandwidth budget couples streams, so it assigns
//!   streams in descending weight `1/q`, giving each the best pair that fits
//!   the remaining budget, and repairs by degrading already-assigned streams
//!   (least important first) one ladder step at a time when a later stream
//!   cannot fit. Cost is `O(|ladder| * N * K)` plus at most `K * |ladder|`
//!   repair steps.
//!
//! Ties are broken everywhere by lower latency, then lower resolution, then
//! lower model index, which makes every solver deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{bitrate, Assignment, DetectionModel, GlobalParams, StreamChoice, VideoStream};

/// A complete problem: streams, deployable models, and global parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub streams: Vec<VideoStream>,
    pub models: Vec<DetectionModel>,
    pub params: GlobalParams,
}

impl ProblemInstance {
    /// Validates every type invariant plus the cross-cutting ones: unique
    /// ids and full proc-latency coverage of every stream's ladder by every
    /// model.
    pub fn validate(&self) -> Result<()> {
        if self.streams.is_empty() {
            return Err(Error::invariant("streams", "need at least one stream"));
        }
        if self.models.is_empty() {
            return Err(Error::invariant("models", "need at least one model"));
        }
        for (i, s) in self.streams.iter().enumerate() {
            s.validate(&format!("streams[{i}]"))?;
        }
        for (j, m) in self.models.iter().enumerate() {
            m.validate(&format!("models[{j}]"))?;
        }
        self.params.validate("params")?;

        let mut stream_ids: Vec<u32> = self.streams.iter().map(|s| s.id).collect();
        stream_ids.sort_unstable();
        if stream_ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invariant("streams", "duplicate stream id"));
        }
        let mut model_ids: Vec<u32> = self.models.iter().map(|m| m.id).collect();
        model_ids.sort_unstable();
        if model_ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invariant("models", "duplicate model id"));
        }

        for (i, s) in self.streams.iter().enumerate() {
            for (j, m) in self.models.iter().enumerate() {
                for &r in &s.resolution_ladder {
                    if !m.proc_latency.covers(r) {
                        return Err(Error::invariant(
                            format!("models[{j}].proc_latency"),
                            format!(
                                "does not cover {r}px required by streams[{i}] (profiled {}..={}px)",
                                m.proc_latency.min_resolution(),
                                m.proc_latency.max_resolution()
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ensures `assignment` is structurally valid for this instance.
    pub fn validate_assignment(&self, assignment: &Assignment) -> Result<()> {
        if assignment.len() != self.streams.len() {
            return Err(Error::Usage(format!(
                "assignment covers {} streams, instance has {}",
                assignment.len(),
                self.streams.len()
            )));
        }
        for (i, (choice, stream)) in assignment.choices.iter().zip(&self.streams).enumerate() {
            if !stream.resolution_ladder.contains(&choice.resolution) {
                return Err(Error::Usage(format!(
                    "choice[{i}]: {}px is not on the stream's ladder",
                    choice.resolution
                )));
            }
            if choice.model >= self.models.len() {
                return Err(Error::Usage(format!(
                    "choice[{i}]: model index {} out of range ({} models)",
                    choice.model,
                    self.models.len()
                )));
            }
        }
        Ok(())
    }
}

/// How the deadline constraint is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeadlineMode {
    /// Every stream must meet the single global bound `params.l_max`.
    #[default]
    Global,
    /// Each stream must meet its own `deadline` field instead.
    PerStream,
}

/// Units in which accuracy enters the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AccuracyUnits {
    /// Fraction in [0, 1] (percent / 100).
    #[default]
    Fraction,
    /// Raw percent in [0, 100].
    Percent,
}

/// Solver knobs shared by every entry point.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub deadline_mode: DeadlineMode,
    pub accuracy_units: AccuracyUnits,
    /// Maximum number of assignments [`solve_bruteforce`] will enumerate.
    pub enumeration_cap: u128,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            deadline_mode: DeadlineMode::Global,
            accuracy_units: AccuracyUnits::Fraction,
            enumeration_cap: 10_000_000,
        }
    }
}

/// Configuration policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// The adaptive greedy solver over the full objective.
    Cans,
    /// Most expensive knobs: maximum resolution and the most accurate model
    /// at it, with every constraint ignored.
    AccuracyOptimal,
    /// Cheapest knobs: the minimum-latency pair per stream, accuracy ignored.
    DelayOptimal,
    /// Most expensive configuration that still honors the hard latency
    /// constraints (deadline and realtime), chosen once and never adapted.
    DelayChronic,
}

impl Policy {
    pub const ALL: [Policy; 4] = [
        Policy::Cans,
        Policy::AccuracyOptimal,
        Policy::DelayOptimal,
        Policy::DelayChronic,
    ];

    /// Only the adaptive policy re-solves when bandwidth shifts; the
    /// baselines configure once and hold.
    pub fn is_adaptive(&self) -> bool {
        matches!(self, Policy::Cans)
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Policy::Cans => "cans",
            Policy::AccuracyOptimal => "accuracy-optimal",
            Policy::DelayOptimal => "delay-optimal",
            Policy::DelayChronic => "delay-chronic",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cans" => Ok(Policy::Cans),
            "accuracy-optimal" => Ok(Policy::AccuracyOptimal),
            "delay-optimal" => Ok(Policy::DelayOptimal),
            "delay-chronic" => Ok(Policy::DelayChronic),
            other => Err(Error::Usage(format!(
                "unknown policy '{other}' (expected cans, accuracy-optimal, delay-optimal, delay-chronic)"
            ))),
        }
    }
}

/// Per-stream and aggregate constraint outcomes for one assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub deadline_ok: Vec<bool>,
    pub processing_ok: Vec<bool>,
    pub bandwidth_ok: bool,
    pub feasible: bool,
}

/// Deadline check per stream: end-to-end latency within the bound
/// (inclusive).
pub fn check_deadline(
    instance: &ProblemInstance,
    assignment: &Assignment,
    opts: &SolverOptions,
) -> Result<Vec<bool>> {
    instance.validate_assignment(assignment)?;
    let mut ok = Vec::with_capacity(instance.streams.len());
    for (stream, choice) in instance.streams.iter().zip(&assignment.choices) {
        let latency = stream.end_to_end_latency(
            choice.resolution,
            &instance.models[choice.model],
            instance.params.bandwidth,
            instance.params.alpha,
        )?;
        let bound = match opts.deadline_mode {
            DeadlineMode::Global => instance.params.l_max,
            DeadlineMode::PerStream => stream.deadline,
        };
        ok.push(latency <= bound);
    }
    Ok(ok)
}

/// Realtime check per stream: processing latency within the frame interval
/// `1/f_i`.
pub fn check_processing(instance: &ProblemInstance, assignment: &Assignment) -> Result<Vec<bool>> {
    instance.validate_assignment(assignment)?;
    let mut ok = Vec::with_capacity(instance.streams.len());
    for (stream, choice) in instance.streams.iter().zip(&assignment.choices) {
        let proc = instance.models[choice.model].proc_latency_at(choice.resolution)?;
        ok.push(proc <= 1.0 / stream.framerate);
    }
    Ok(ok)
}

/// Bandwidth check: the bitrate sum of all streams within the shared budget.
pub fn check_bandwidth(instance: &ProblemInstance, assignment: &Assignment) -> Result<bool> {
    instance.validate_assignment(assignment)?;
    let mut total = 0.0;
    for choice in &assignment.choices {
        total += bitrate(choice.resolution, instance.params.alpha)?;
    }
    Ok(total <= instance.params.bandwidth)
}

/// Runs all three checks and conjoins them.
pub fn feasibility(
    instance: &ProblemInstance,
    assignment: &Assignment,
    opts: &SolverOptions,
) -> Result<FeasibilityReport> {
    let deadline_ok = check_deadline(instance, assignment, opts)?;
    let processing_ok = check_processing(instance, assignment)?;
    let bandwidth_ok = check_bandwidth(instance, assignment)?;
    let feasible =
        deadline_ok.iter().all(|&b| b) && processing_ok.iter().all(|&b| b) && bandwidth_ok;
    Ok(FeasibilityReport {
        deadline_ok,
        processing_ok,
        bandwidth_ok,
        feasible,
    })
}

fn accuracy_value(percent: f64, units: AccuracyUnits) -> f64 {
    match units {
        AccuracyUnits::Fraction => percent / 100.0,
        AccuracyUnits::Percent => percent,
    }
}

/// The QoS-weighted latency-minus-accuracy objective
/// `sum_i (1/q_i) * (l_i - omega * a_i)`. Lower is better.
pub fn objective(
    instance: &ProblemInstance,
    assignment: &Assignment,
    opts: &SolverOptions,
) -> Result<f64> {
    instance.validate_assignment(assignment)?;
    let mut total = 0.0;
    for (stream, choice) in instance.streams.iter().zip(&assignment.choices) {
        let model = &instance.models[choice.model];
        let latency = stream.end_to_end_latency(
            choice.resolution,
            model,
            instance.params.bandwidth,
            instance.params.alpha,
        )?;
        let acc = accuracy_value(model.accuracy(choice.resolution), opts.accuracy_units);
        total += (latency - instance.params.omega * acc) / stream.qos;
    }
    Ok(total)
}

/// The accuracy side of the objective, `sum_i (1/q_i) * a_i`, in the
/// configured units. Useful for sensitivity studies over `omega`.
pub fn accuracy_term(
    instance: &ProblemInstance,
    assignment: &Assignment,
    opts: &SolverOptions,
) -> Result<f64> {
    instance.validate_assignment(assignment)?;
    let mut total = 0.0;
    for (stream, choice) in instance.streams.iter().zip(&assignment.choices) {
        let model = &instance.models[choice.model];
        let acc = accuracy_value(model.accuracy(choice.resolution), opts.accuracy_units);
        total += acc / stream.qos;
    }
    Ok(total)
}

/// One evaluated (resolution, model) pair for a specific stream.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    resolution: u32,
    model: usize,
    bitrate: f64,
    latency: f64,
    /// Accuracy in the objective's units.
    accuracy: f64,
    /// Weighted objective contribution `(l - omega a) / q`.
    contribution: f64,
}

impl Candidate {
    /// Deterministic preference order: contribution, then latency, then
    /// resolution, then model index.
    fn better_than(&self, other: &Candidate) -> bool {
        if self.contribution != other.contribution {
            return self.contribution < other.contribution;
        }
        if self.latency != other.latency {
            return self.latency < other.latency;
        }
        if self.resolution != other.resolution {
            return self.resolution < other.resolution;
        }
        self.model < other.model
    }
}

/// All pairs for one stream, evaluated at the instance's bandwidth.
/// `admissible` filters to pairs satisfying the per-stream constraints
/// (deadline and realtime); the bandwidth budget couples streams and is
/// handled by the solvers.
fn stream_candidates(
    instance: &ProblemInstance,
    stream_index: usize,
    opts: &SolverOptions,
    admissible_only: bool,
) -> Result<Vec<Candidate>> {
    let stream = &instance.streams[stream_index];
    let params = &instance.params;
    let deadline = match opts.deadline_mode {
        DeadlineMode::Global => params.l_max,
        DeadlineMode::PerStream => stream.deadline,
    };
    let frame_interval = 1.0 / stream.framerate;
    let mut out = Vec::with_capacity(stream.resolution_ladder.len() * instance.models.len());
    for &r in &stream.resolution_ladder {
        for (j, model) in instance.models.iter().enumerate() {
            let proc = model.proc_latency_at(r)?;
            let latency = stream.transmission_latency(r, params.bandwidth, params.alpha)? + proc;
            if admissible_only && (proc > frame_interval || latency > deadline) {
                continue;
            }
            let accuracy = accuracy_value(model.accuracy(r), opts.accuracy_units);
            out.push(Candidate {
                resolution: r,
                model: j,
                bitrate: bitrate(r, params.alpha)?,
                latency,
                accuracy,
                contribution: (latency - params.omega * accuracy) / stream.qos,
            });
        }
    }
    Ok(out)
}

/// Exhaustive search over every admissible assignment; the exact reference
/// the greedy solver is measured against. Returns `None` when no assignment
/// satisfies all constraints.
pub fn solve_bruteforce(
    instance: &ProblemInstance,
    opts: &SolverOptions,
) -> Result<Option<Assignment>> {
    let k = instance.streams.len();
    let mut space: u128 = 1;
    for stream in &instance.streams {
        space = space.saturating_mul((stream.resolution_ladder.len() * instance.models.len()) as u128);
    }
    if space > opts.enumeration_cap {
        return Err(Error::EnumerationCap {
            candidates: space,
            cap: opts.enumeration_cap,
        });
    }

    let mut tables = Vec::with_capacity(k);
    for i in 0..k {
        let cands = stream_candidates(instance, i, opts, true)?;
        if cands.is_empty() {
            return Ok(None); // some stream has no pair meeting its own constraints
        }
        tables.push(cands);
    }

    let budget = instance.params.bandwidth;
    let mut indices = vec![0usize; k];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        let mut total_bitrate = 0.0;
        let mut total_objective = 0.0;
        for (i, &c) in indices.iter().enumerate() {
            let cand = &tables[i][c];
            total_bitrate += cand.bitrate;
            total_objective += cand.contribution;
        }
        if total_bitrate <= budget {
            let accept = match &best {
                None => true,
                Some((best_obj, best_idx)) => {
                    if total_objective != *best_obj {
                        total_objective < *best_obj
                    } else {
                        // Equal objective: prefer the assignment whose
                        // per-stream (latency, resolution, model) tuples are
                        // lexicographically smaller, stream by stream.
                        let mut prefer = false;
                        for (i, (&c, &b)) in indices.iter().zip(best_idx.iter()).enumerate() {
                            let cn = &tables[i][c];
                            let bn = &tables[i][b];
                            if cn.latency != bn.latency {
                                prefer = cn.latency < bn.latency;
                                break;
                            }
                            if cn.resolution != bn.resolution {
                                prefer = cn.resolution < bn.resolution;
                                break;
                            }
                            if cn.model != bn.model {
                                prefer = cn.model < bn.model;
                                break;
                            }
                        }
                        prefer
                    }
                }
            };
            if accept {
                best = Some((total_objective, indices.clone()));
            }
        }

        // next combination (mixed-radix increment)
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < tables[pos].len() {
                break;
            }
            indices[pos] = 0;
            if pos == 0 {
                pos = usize::MAX;
                break;
            }
        }
        if pos == usize::MAX {
            break;
        }
    }

    Ok(best.map(|(_, idx)| {
        Assignment::new(
            idx.iter()
                .enumerate()
                .map(|(i, &c)| StreamChoice {
                    resolution: tables[i][c].resolution,
                    model: tables[i][c].model,
                })
                .collect(),
        )
    }))
}

/// Work counters exposed by [`solve_cans_with_stats`]; the complexity bound
/// `scan_pairs <= |ladder| * N * K` and `repair_steps <= K * |ladder|` is
/// asserted by the test suite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CansStats {
    /// Candidate pairs examined during the initial greedy scan.
    pub scan_pairs: usize,
    /// One-ladder-step degradations performed by the repair pass.
    pub repair_steps: usize,
    /// Candidate pairs re-examined when retrying a stuck stream.
    pub retry_pairs: usize,
}

/// The greedy solver. See the module docs for the decomposition; returns
/// `None` when no feasible assignment exists (it agrees with
/// [`solve_bruteforce`] on feasibility).
pub fn solve_cans(instance: &ProblemInstance, opts: &SolverOptions) -> Result<Option<Assignment>> {
    solve_cans_with_stats(instance, opts).map(|(a, _)| a)
}

/// [`solve_cans`] plus work counters.
pub fn solve_cans_with_stats(
    instance: &ProblemInstance,
    opts: &SolverOptions,
) -> Result<(Option<Assignment>, CansStats)> {
    let k = instance.streams.len();
    let mut stats = CansStats::default();

    // Per stream: admissible candidates, and the best candidate per ladder
    // rung (the repair pass degrades along rungs).
    let mut rung_best: Vec<Vec<Candidate>> = Vec::with_capacity(k);
    let mut all_admissible: Vec<Vec<Candidate>> = Vec::with_capacity(k);
    for i in 0..k {
        let cands = stream_candidates(instance, i, opts, true)?;
        if cands.is_empty() {
            return Ok((None, stats));
        }
        let mut per_rung: Vec<Candidate> = Vec::new();
        for &r in &instance.streams[i].resolution_ladder {
            let best = cands
                .iter()
                .filter(|c| c.resolution == r)
                .fold(None::<Candidate>, |acc, c| match acc {
                    None => Some(*c),
                    Some(b) => Some(if c.better_than(&b) { *c } else { b }),
                });
            if let Some(b) = best {
                per_rung.push(b);
            }
        }
        rung_best.push(per_rung);
        all_admissible.push(cands);
    }

    // Descending weight 1/q, i.e. ascending q; ties by lower stream index.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        instance.streams[a]
            .qos
            .partial_cmp(&instance.streams[b].qos)
            .expect("qos is finite")
            .then(a.cmp(&b))
    });

    let budget = instance.params.bandwidth;
    let mut remaining = budget;
    let mut chosen: Vec<Option<Candidate>> = vec![None; k];
    // Streams already assigned, in assignment order (descending weight).
    let mut assigned: Vec<usize> = Vec::new();

    let pick_best_fitting = |cands: &[Candidate], cap: f64, counter: &mut usize| {
        let mut best: Option<Candidate> = None;
        for c in cands {
            *counter += 1;
            if c.bitrate > cap {
                continue;
            }
            best = match best {
                None => Some(*c),
                Some(b) => Some(if c.better_than(&b) { *c } else { b }),
            };
        }
        best
    };

    for &i in &order {
        let mut pick = pick_best_fitting(&all_admissible[i], remaining, &mut stats.scan_pairs);
        if pick.is_none() {
            // Repair: free bandwidth by degrading already-assigned streams,
            // least important first (they sit at the tail of `assigned`),
            // one ladder rung per step, until the stuck stream fits.
            'repair: loop {
                let mut degraded = false;
                for &earlier in assigned.iter().rev() {
                    let current = chosen[earlier].expect("assigned stream has a choice");
                    let rungs = &rung_best[earlier];
                    let pos = rungs
                        .iter()
                        .position(|c| c.resolution == current.resolution)
                        .expect("current choice sits on a rung");
                    if pos == 0 {
                        continue; // already at its lowest admissible rung
                    }
                    let lower = rungs[pos - 1];
                    remaining += current.bitrate - lower.bitrate;
                    chosen[earlier] = Some(lower);
                    stats.repair_steps += 1;
                    degraded = true;
                    break;
                }
                if !degraded {
                    return Ok((None, stats)); // nothing left to degrade
                }
                pick = pick_best_fitting(&all_admissible[i], remaining, &mut stats.retry_pairs);
                if pick.is_some() {
                    break 'repair;
                }
            }
        }
        let cand = pick.expect("loop above only exits with a candidate");
        remaining -= cand.bitrate;
        chosen[i] = Some(cand);
        assigned.push(i);
    }

    let assignment = Assignment::new(
        chosen
            .into_iter()
            .map(|c| {
                let c = c.expect("every stream assigned");
                StreamChoice {
                    resolution: c.resolution,
                    model: c.model,
                }
            })
            .collect(),
    );
    debug_assert!(feasibility(instance, &assignment, opts)?.feasible);
    Ok((Some(assignment), stats))
}

/// Dispatches to one of the four policies. The baselines deliberately ignore
/// parts of the constraint set; use [`feasibility`] on their output to see
/// which constraints the returned assignment violates.
pub fn solve_policy(
    instance: &ProblemInstance,
    policy: Policy,
    opts: &SolverOptions,
) -> Result<Option<Assignment>> {
    match policy {
        Policy::Cans => solve_cans(instance, opts),
        Policy::AccuracyOptimal => solve_accuracy_optimal(instance).map(Some),
        Policy::DelayOptimal => solve_delay_optimal(instance, opts).map(Some),
        Policy::DelayChronic => solve_delay_chronic(instance, opts),
    }
}

/// Largest resolution and the most accurate model at it, constraints ignored.
fn solve_accuracy_optimal(instance: &ProblemInstance) -> Result<Assignment> {
    let mut choices = Vec::with_capacity(instance.streams.len());
    for stream in &instance.streams {
        let r = *stream
            .resolution_ladder
            .last()
            .expect("ladder is non-empty");
        let mut best = 0usize;
        for (j, model) in instance.models.iter().enumerate() {
            // Reject models whose profile cannot even run this resolution.
            model.proc_latency_at(r)?;
            if model.accuracy(r) > instance.models[best].accuracy(r) {
                best = j;
            }
        }
        choices.push(StreamChoice {
            resolution: r,
            model: best,
        });
    }
    Ok(Assignment::new(choices))
}

/// Minimum end-to-end latency pair per stream, accuracy and constraints
/// ignored.
fn solve_delay_optimal(instance: &ProblemInstance, opts: &SolverOptions) -> Result<Assignment> {
    let mut choices = Vec::with_capacity(instance.streams.len());
    for i in 0..instance.streams.len() {
        let cands = stream_candidates(instance, i, opts, false)?;
        let best = cands
            .iter()
            .fold(None::<Candidate>, |acc, c| {
                let better = match &acc {
                    None => true,
                    Some(b) => {
                        (c.latency, c.resolution, c.model) < (b.latency, b.resolution, b.model)
                    }
                };
                if better {
                    Some(*c)
                } else {
                    acc
                }
            })
            .expect("ladder and model list are non-empty");
        choices.push(StreamChoice {
            resolution: best.resolution,
            model: best.model,
        });
    }
    Ok(Assignment::new(choices))
}

/// The non-adaptive deadline-capped baseline: per stream, the largest
/// resolution at which some model honors both hard latency constraints
/// (deadline and realtime), then the most accurate such model. It neither
/// coordinates the shared bandwidth nor re-solves as conditions change,
/// which is what separates it from the full solver.
fn solve_delay_chronic(
    instance: &ProblemInstance,
    opts: &SolverOptions,
) -> Result<Option<Assignment>> {
    let mut choices = Vec::with_capacity(instance.streams.len());
    for i in 0..instance.streams.len() {
        let cands = stream_candidates(instance, i, opts, true)?;
        if cands.is_empty() {
            return Ok(None);
        }
        let max_r = cands
            .iter()
            .map(|c| c.resolution)
            .max()
            .expect("candidate list is non-empty");
        let best = cands
            .iter()
            .filter(|c| c.resolution == max_r)
            .fold(None::<Candidate>, |acc, c| {
                let better = match &acc {
                    None => true,
                    // Highest accuracy; ties to the lower model index.
                    Some(b) => c.accuracy > b.accuracy,
                };
                if better {
                    Some(*c)
                } else {
                    acc
                }
            })
            .expect("filtered list is non-empty");
        choices.push(StreamChoice {
            resolution: best.resolution,
            model: best.model,
        });
    }
    Ok(Some(Assignment::new(choices)))
}

/// Human-readable reason why no feasible assignment exists, naming the
/// binding constraint.
pub fn describe_infeasibility(instance: &ProblemInstance, opts: &SolverOptions) -> String {
    for (i, stream) in instance.streams.iter().enumerate() {
        let frame_interval = 1.0 / stream.framerate;
        let deadline = match opts.deadline_mode {
            DeadlineMode::Global => instance.params.l_max,
            DeadlineMode::PerStream => stream.deadline,
        };
        let mut any_realtime = false;
        let mut any_both = false;
        for &r in &stream.resolution_ladder {
            for model in &instance.models {
                let Ok(proc) = model.proc_latency_at(r) else {
                    continue;
                };
                let Ok(tran) =
                    stream.transmission_latency(r, instance.params.bandwidth, instance.params.alpha)
                else {
                    continue;
                };
                if proc <= frame_interval {
                    any_realtime = true;
                    if tran + proc <= deadline {
                        any_both = true;
                    }
                }
            }
        }
        if !any_realtime {
            return format!(
                "stream {} has no model meeting the realtime bound 1/f = {:.4} s",
                stream.id, frame_interval
            );
        }
        if !any_both {
            return format!(
                "stream {} ({i}) has no configuration meeting the {:.4} s deadline at {:.2} Mbps",
                stream.id,
                deadline,
                instance.params.bandwidth / 1e6
            );
        }
    }
    // Per-stream constraints are satisfiable; the shared budget must bind.
    let min_total: f64 = instance
        .streams
        .iter()
        .map(|s| {
            s.resolution_ladder
                .iter()
                .map(|&r| instance.params.alpha * f64::from(r) * f64::from(r))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    format!(
        "bandwidth constraint binds: minimum total bitrate {:.2} Mbps exceeds available {:.2} Mbps",
        min_total / 1e6,
        instance.params.bandwidth / 1e6
    )
}
