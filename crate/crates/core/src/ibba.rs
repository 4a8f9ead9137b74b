//! Branch-and-bound solver over constraint indices.
//!
//! The solver maintains a partition of `[a, b]` into subintervals whose
//! endpoints are trial points. Each interval gets a *characteristic* `R`,
//! a certified lower bound for how far the problem can still improve
//! inside that interval (see [`crate::support`]): negative means "worth
//! exploring", positive means "provably useless". Each iteration picks
//! the interval with the smallest characteristic, places one new trial
//! inside it by the cone geometry of its endpoints, and splits it.
//!
//! Constraints participate through the index scheme of
//! [`crate::index::evaluate_index`]: a trial only pays for the constraints
//! up to its first violation, intervals whose endpoints have unequal
//! indices use one-sided cones, and a best-feasible record only forms
//! once some trial passes every constraint. Three outcomes are certified
//! under valid Lipschitz bounds:
//!
//! * every interval acquired a positive characteristic: no feasible point
//!   exists ([`SolveStatus::InfeasibleDetected`]);
//! * the next interval to subdivide is already shorter than `epsilon` and
//!   a feasible point is known ([`SolveStatus::AccuracyReached`], with
//!   two-sided bounds on the constrained minimum);
//! * the same, but nothing feasible was ever found
//!   ([`SolveStatus::FeasibilityUnresolved`]: the feasible set, if any,
//!   is thinner than the resolution).
//!
//! The solver is strictly sequential and deterministic: equal
//! characteristics are broken toward the leftmost interval, and repeated
//! runs produce bitwise-identical output.

use crate::index::{evaluate_index, reduced_value, FeasibleBest, Trial};
use crate::problem::{EvaluationLedger, ProblemError, ProblemSpec};
use crate::support::{self, Apex, Envelope};
use crate::trace::{Trace, TraceRecord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// How an interval's endpoint indices compare, which decides the
/// characteristic formula and the placement of the next trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalCase {
    /// Both endpoints answered with the same constraint (or both are
    /// feasible): two cones of one slope.
    EqualIndex,
    /// The right endpoint got further through the constraint list.
    Rising,
    /// The left endpoint got further.
    Falling,
}

/// Strategy for refreshing characteristics after the feasible record
/// improves. Only intervals with a feasible endpoint depend on the
/// record, so the incremental mode touches exactly those; the full mode
/// recomputes everything and must produce bit-identical results (it
/// exists to keep that claim testable).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Recompute {
    #[default]
    Incremental,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Interval-length stopping tolerance (in `x` units).
    pub epsilon: f64,
    /// Trial budget, counting the two initial endpoint trials.
    pub max_iterations: u64,
    /// Record a full trace of the run in the outcome.
    pub emit_trace: bool,
    pub recompute: Recompute,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            epsilon: 1e-4,
            max_iterations: 100_000,
            emit_trace: false,
            recompute: Recompute::Incremental,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    /// Subdivision reached `epsilon` around a feasible record; `best` and
    /// `bounds` are set.
    AccuracyReached,
    /// Every subinterval was certified to contain no feasible point.
    InfeasibleDetected,
    /// Subdivision reached `epsilon` without ever finding a feasible
    /// point, but infeasibility was not certified either: any feasible
    /// subregion is thinner than the resolution.
    FeasibilityUnresolved,
    /// The trial budget ran out first.
    BudgetExhausted,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    /// The subdivision point of the selected interval landed on an
    /// endpoint. Under Lipschitz bounds that strictly dominate the true
    /// constants this cannot happen; it signals an underestimated bound
    /// or a degenerate problem.
    #[error(
        "new trial point {x} is not strictly inside ({left}, {right}); \
         a Lipschitz bound is too small or the interval is degenerate"
    )]
    NonInteriorPoint { x: f64, left: f64, right: f64 },
}

/// One interval of the final partition, for inspection and diagrams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSnapshot {
    pub left: Trial,
    pub right: Trial,
    pub case: IntervalCase,
    /// Characteristic. For pruned intervals this is the value that caused
    /// the pruning; for live intervals it reflects the final record.
    pub r: f64,
    /// Leftmost point not excluded by the left endpoint's cone, clamped
    /// to the interval.
    pub y_minus: f64,
    /// Rightmost point not excluded by the right endpoint's cone.
    pub y_plus: f64,
    /// Whether the interval was discarded with a positive characteristic.
    pub pruned: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Best feasible point found, if any.
    pub best: Option<FeasibleBest>,
    /// Certified enclosure `(lower, upper)` of the constrained minimum;
    /// present exactly when `status` is [`SolveStatus::AccuracyReached`].
    pub bounds: Option<(f64, f64)>,
    /// Largest constraint index any trial reached (`m + 1` once a
    /// feasible point exists).
    pub max_index: usize,
    pub ledger: EvaluationLedger,
    /// Every trial in execution order.
    pub trials: Vec<Trial>,
    /// Final partition of the domain, sorted by position, pruned
    /// intervals included.
    pub intervals: Vec<IntervalSnapshot>,
    pub trace: Option<Trace>,
}

impl SolveOutcome {
    /// Trials sorted by position.
    pub fn sorted_trials(&self) -> Vec<Trial> {
        let mut row = self.trials.clone();
        row.sort_by(|p, q| p.x.total_cmp(&q.x));
        row
    }
}

/// Classifies the interval between two trials and computes its
/// characteristic, given the current best feasible objective value.
pub fn characteristic(
    spec: &ProblemSpec,
    left: &Trial,
    right: &Trial,
    best_f: Option<f64>,
) -> (IntervalCase, f64) {
    let m = spec.m();
    let len = right.x - left.x;
    let z_l = reduced_value(left, m, best_f);
    let z_r = reduced_value(right, m, best_f);
    let k_l = spec.function(left.index).k;
    let k_r = spec.function(right.index).k;
    if left.index == right.index {
        (
            IntervalCase::EqualIndex,
            support::equal_characteristic(z_l, z_r, k_l, len),
        )
    } else if left.index < right.index {
        (
            IntervalCase::Rising,
            support::rising_characteristic(z_l, z_r, k_l, k_r, len),
        )
    } else {
        (
            IntervalCase::Falling,
            support::falling_characteristic(z_l, z_r, k_l, k_r, len),
        )
    }
}

/// Points of the interval not excluded by the endpoint cones, clamped to
/// the interval: left of `y_minus` the left endpoint's function is
/// provably positive, right of `y_plus` the right endpoint's is.
pub fn shrink_points(
    spec: &ProblemSpec,
    left: &Trial,
    right: &Trial,
    best_f: Option<f64>,
) -> (f64, f64) {
    let m = spec.m();
    let z_l = reduced_value(left, m, best_f);
    let z_r = reduced_value(right, m, best_f);
    let y_minus = support::left_shrink(left.x, z_l, spec.function(left.index).k);
    let y_plus = support::right_shrink(right.x, z_r, spec.function(right.index).k);
    (y_minus.min(right.x), y_plus.max(left.x))
}

/// Where the next trial goes inside an interval: the cone crossing for
/// equal indices, otherwise the midpoint of the part not excluded by the
/// lower-index endpoint's cone.
pub fn new_trial_point(
    spec: &ProblemSpec,
    left: &Trial,
    right: &Trial,
    best_f: Option<f64>,
) -> f64 {
    let m = spec.m();
    let z_l = reduced_value(left, m, best_f);
    let z_r = reduced_value(right, m, best_f);
    let k_l = spec.function(left.index).k;
    let k_r = spec.function(right.index).k;
    if left.index == right.index {
        support::crossing_point(left.x, right.x, z_l, z_r, k_l)
    } else if left.index < right.index {
        0.5 * (support::left_shrink(left.x, z_l, k_l) + right.x)
    } else {
        0.5 * (left.x + support::right_shrink(right.x, z_r, k_r))
    }
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    left: Trial,
    right: Trial,
    case: IntervalCase,
    r: f64,
}

impl Interval {
    fn new(spec: &ProblemSpec, left: Trial, right: Trial, best_f: Option<f64>) -> Interval {
        let (case, r) = characteristic(spec, &left, &right, best_f);
        Interval {
            left,
            right,
            case,
            r,
        }
    }

    fn len(&self) -> f64 {
        self.right.x - self.left.x
    }
}

struct Engine<'a> {
    spec: &'a ProblemSpec,
    config: &'a SolverConfig,
    m: usize,
    ledger: EvaluationLedger,
    trials: Vec<Trial>,
    sorted_xs: Vec<f64>,
    best: Option<FeasibleBest>,
    max_index: usize,
    /// Live intervals, sorted by position.
    active: Vec<Interval>,
    /// Discarded intervals, in pruning order.
    pruned: Vec<Interval>,
    trace: Vec<TraceRecord>,
}

impl<'a> Engine<'a> {
    fn best_f(&self) -> Option<f64> {
        self.best.map(|b| b.f)
    }

    fn run_trial(&mut self, x: f64, origin: Option<(usize, f64)>) -> Result<Trial, SolveError> {
        let trial = evaluate_index(self.spec, x, &mut self.ledger)?;
        self.trials.push(trial);
        let pos = self.sorted_xs.partition_point(|&u| u < x);
        self.sorted_xs.insert(pos, x);
        self.max_index = self.max_index.max(trial.index);
        let improved = FeasibleBest::update(&mut self.best, &trial, self.m);
        if improved {
            self.refresh_characteristics();
        }
        if self.config.emit_trace {
            self.trace.push(TraceRecord {
                k: self.ledger.iterations,
                x: trial.x,
                index: trial.index,
                raw: trial.raw,
                zstar: self.best_f(),
                t: origin.map(|(t, _)| t),
                r: origin.map(|(_, r)| r),
            });
        }
        Ok(trial)
    }

    /// Re-derives characteristics after the feasible record improved and
    /// prunes what became positive. A smaller record raises the reduced
    /// height of feasible endpoints and with it every characteristic, so
    /// intervals only move toward pruning, never back.
    fn refresh_characteristics(&mut self) {
        let best_f = self.best_f();
        for interval in &mut self.active {
            let depends_on_record =
                interval.left.is_feasible(self.m) || interval.right.is_feasible(self.m);
            if matches!(self.config.recompute, Recompute::Full) || depends_on_record {
                let (case, r) = characteristic(self.spec, &interval.left, &interval.right, best_f);
                interval.case = case;
                interval.r = r;
            }
        }
        self.sweep_pruned();
    }

    fn sweep_pruned(&mut self) {
        let mut i = 0;
        while i < self.active.len() {
            if self.active[i].r > 0.0 {
                let interval = self.active.remove(i);
                self.pruned.push(interval);
            } else {
                i += 1;
            }
        }
    }

    fn insert(&mut self, interval: Interval) {
        if interval.r > 0.0 {
            self.pruned.push(interval);
            return;
        }
        let pos = self
            .active
            .partition_point(|iv| iv.left.x < interval.left.x);
        self.active.insert(pos, interval);
    }

    /// Index of the leftmost active interval with the smallest
    /// characteristic.
    fn select(&self) -> usize {
        let mut best = 0;
        for (i, interval) in self.active.iter().enumerate().skip(1) {
            if interval.r < self.active[best].r {
                best = i;
            }
        }
        best
    }

    fn snapshot(&self, interval: &Interval, pruned: bool) -> IntervalSnapshot {
        let (y_minus, y_plus) =
            shrink_points(self.spec, &interval.left, &interval.right, self.best_f());
        IntervalSnapshot {
            left: interval.left,
            right: interval.right,
            case: interval.case,
            r: interval.r,
            y_minus,
            y_plus,
            pruned,
        }
    }

    fn finish(self, status: SolveStatus, bounds: Option<(f64, f64)>) -> SolveOutcome {
        let mut intervals: Vec<IntervalSnapshot> = self
            .active
            .iter()
            .map(|iv| self.snapshot(iv, false))
            .chain(self.pruned.iter().map(|iv| self.snapshot(iv, true)))
            .collect();
        intervals.sort_by(|p, q| p.left.x.total_cmp(&q.left.x));
        let trace = if self.config.emit_trace {
            Some(Trace {
                problem: self.spec.name.clone(),
                method: "ibba".to_owned(),
                a: self.spec.a,
                b: self.spec.b,
                m: self.m,
                records: self.trace,
            })
        } else {
            None
        };
        SolveOutcome {
            status,
            best: self.best,
            bounds,
            max_index: self.max_index,
            ledger: self.ledger,
            trials: self.trials,
            intervals,
            trace,
        }
    }

    /// Two-sided enclosure of the constrained minimum at the accuracy
    /// stop. The upper bound is the feasible record. For the lower bound:
    /// if every live interval has a feasible endpoint, the smallest
    /// characteristic bounds the possible improvement directly; otherwise
    /// live intervals still carry unresolved constraint structure and the
    /// bound falls back to minimizing the objective's sawtooth envelope
    /// (built from all feasible trials) over the still-live intervals.
    fn result_bounds(&self, r_min: f64) -> (f64, f64) {
        let record = self.best.expect("bounds require a feasible record");
        let upper = record.f;
        let all_touch_feasible = self
            .active
            .iter()
            .all(|iv| iv.left.index.max(iv.right.index) == self.m + 1);
        let lower = if all_touch_feasible {
            r_min + upper
        } else {
            let apexes: Vec<Apex> = self
                .trials
                .iter()
                .filter(|t| t.is_feasible(self.m))
                .map(|t| Apex {
                    x: t.x,
                    value: t.raw,
                })
                .collect();
            let envelope = Envelope::new(self.spec.function(self.m + 1).k, apexes);
            let strict: Vec<(f64, f64)> = self
                .active
                .iter()
                .filter(|iv| iv.r < 0.0)
                .map(|iv| (iv.left.x, iv.right.x))
                .collect();
            let segments: Vec<(f64, f64)> = if strict.is_empty() {
                self.active
                    .iter()
                    .map(|iv| (iv.left.x, iv.right.x))
                    .collect()
            } else {
                strict
            };
            envelope.min_over(&segments).unwrap_or(upper).min(upper)
        };
        (lower, upper)
    }
}

/// Solves the problem to accuracy `epsilon`. See the module docs for the
/// possible outcomes; errors abort the run (they indicate an ill-posed
/// problem, not a property of the minimum).
pub fn solve(spec: &ProblemSpec, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    spec.validate().map_err(SolveError::Problem)?;
    let m = spec.m();
    let mut engine = Engine {
        spec,
        config,
        m,
        ledger: EvaluationLedger::new(m),
        trials: Vec::new(),
        sorted_xs: Vec::new(),
        best: None,
        max_index: 0,
        active: Vec::new(),
        pruned: Vec::new(),
        trace: Vec::new(),
    };

    let left = engine.run_trial(spec.a, None)?;
    let right = engine.run_trial(spec.b, None)?;
    let first = Interval::new(spec, left, right, engine.best_f());
    engine.insert(first);

    loop {
        if engine.active.is_empty() {
            return Ok(engine.finish(SolveStatus::InfeasibleDetected, None));
        }
        let idx = engine.select();
        let selected = engine.active[idx];
        if selected.r > 0.0 {
            // Unreachable with pruning in place; kept as the explicit
            // form of the certificate.
            return Ok(engine.finish(SolveStatus::InfeasibleDetected, None));
        }
        if selected.len() <= config.epsilon {
            return Ok(if engine.best.is_some() {
                let bounds = engine.result_bounds(selected.r);
                engine.finish(SolveStatus::AccuracyReached, Some(bounds))
            } else {
                engine.finish(SolveStatus::FeasibilityUnresolved, None)
            });
        }
        if engine.ledger.iterations >= config.max_iterations {
            return Ok(engine.finish(SolveStatus::BudgetExhausted, None));
        }

        engine.active.remove(idx);
        let x = new_trial_point(spec, &selected.left, &selected.right, engine.best_f());
        if !(selected.left.x < x && x < selected.right.x) {
            return Err(SolveError::NonInteriorPoint {
                x,
                left: selected.left.x,
                right: selected.right.x,
            });
        }
        let rank = engine.sorted_xs.partition_point(|&u| u <= selected.left.x);
        let trial = engine.run_trial(x, Some((rank, selected.r)))?;
        let best_f = engine.best_f();
        engine.insert(Interval::new(spec, selected.left, trial, best_f));
        engine.insert(Interval::new(spec, trial, selected.right, best_f));
    }
}
