//! Penalty-function baseline: fold the constraints into the objective and
//! minimize the result with the classic sawtooth method.
//!
//! The penalized function is
//!
//! ```text
//! F_P(x) = f(x) + P * max{ g_1(x), ..., g_m(x), 0 }
//! ```
//!
//! with Lipschitz bound `K_f + P * max_j K_j`. Every evaluation computes
//! all `m + 1` functions, so the ledger charges `m + 1` per trial; this
//! is the cost profile the index scheme is designed to beat.
//!
//! Choosing the coefficient is the method's weak point: too small and the
//! minimizer is infeasible, too large and the inflated Lipschitz bound
//! slows the search. [`tune_penalty`] runs the standard schedule (a cheap
//! first guess, then a restart value, then fixed increments), checking
//! the returned point for feasibility after each round and accumulating
//! the evaluation cost of every round. Constraints marked partially
//! defined are rejected up front: the penalty needs every constraint at
//! every point.
//!
//! [`pijavskii_minimize`] is the inner sawtooth loop, exposed on its own.
//! It stores heights relative to the running record (which is exactly the
//! index solver's bookkeeping specialized to zero constraints) and shares
//! the cone arithmetic of [`crate::support`], so on unconstrained
//! problems it visits bitwise-identical trial points to [`crate::ibba`].

use crate::ibba::{SolveError, SolveStatus};
use crate::index::{reduced_value, FeasibleBest, Trial};
use crate::problem::{EvaluationLedger, ProblemError, ProblemSpec};
use crate::support;
use crate::trace::{Trace, TraceRecord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PenaltyConfig {
    /// Coefficient for the first round.
    pub initial_coefficient: f64,
    /// Coefficient for the second round, after the first proved too weak.
    pub restart_coefficient: f64,
    /// Added per round from the third round on.
    pub coefficient_increment: f64,
    /// A returned point counts as feasible when every `g_j(x) <=` this
    /// (zero demands the exact sign condition).
    pub feasibility_tolerance: f64,
    /// Cap on tuning rounds before giving up.
    pub max_rounds: u64,
    /// Interval-length stopping tolerance of the inner sawtooth.
    pub epsilon: f64,
    /// Trial budget per round.
    pub max_iterations: u64,
    /// Record a trace of the final round in the outcome.
    pub emit_trace: bool,
}

impl Default for PenaltyConfig {
    fn default() -> PenaltyConfig {
        PenaltyConfig {
            initial_coefficient: 15.0,
            restart_coefficient: 20.0,
            coefficient_increment: 10.0,
            feasibility_tolerance: 0.0,
            max_rounds: 50,
            epsilon: 1e-4,
            max_iterations: 100_000,
            emit_trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PenStatus {
    /// A round reached the accuracy stop and its best point passed the
    /// feasibility check.
    Solved,
    /// Every round up to `max_rounds` returned an infeasible point.
    TuningFailed,
    /// The inner sawtooth ran out of trials.
    BudgetExhausted,
}

#[derive(Debug, Error)]
pub enum PenError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(
        "constraint {index} is partially defined; the penalty method \
         evaluates every constraint everywhere and cannot honor it"
    )]
    PartialConstraint { index: usize },
}

impl From<ProblemError> for PenError {
    fn from(e: ProblemError) -> PenError {
        PenError::Solve(SolveError::Problem(e))
    }
}

#[derive(Debug, Clone)]
pub struct PenOutcome {
    pub status: PenStatus,
    /// Best point of the last round.
    pub x: f64,
    /// Objective value at `x` (not the penalized value).
    pub value: f64,
    /// Final penalty coefficient (0 for unconstrained problems).
    pub pstar: f64,
    /// Number of sawtooth rounds run.
    pub rounds: u64,
    /// Certified lower bound for the penalized minimum of the last round;
    /// since the penalty vanishes on the feasible set, it also bounds the
    /// constrained minimum from below.
    pub lower_bound: f64,
    /// Accumulated over all rounds; each trial costs `m + 1` evaluations.
    pub ledger: EvaluationLedger,
    /// Trials of the last round, in execution order, with penalized
    /// values in `raw`.
    pub trials: Vec<Trial>,
    pub trace: Option<Trace>,
}

/// Result of one sawtooth run over a plain function.
#[derive(Debug, Clone)]
pub struct SawtoothRun {
    pub status: SolveStatus,
    pub best: FeasibleBest,
    /// Certified lower bound for the function's minimum over `[a, b]`.
    pub lower_bound: f64,
    pub iterations: u64,
    pub trials: Vec<Trial>,
}

struct Span {
    left: Trial,
    right: Trial,
    r: f64,
}

fn span(left: Trial, right: Trial, k: f64, best_f: f64) -> Span {
    let z_l = reduced_value(&left, 0, Some(best_f));
    let z_r = reduced_value(&right, 0, Some(best_f));
    let r = support::equal_characteristic(z_l, z_r, k, right.x - left.x);
    Span { left, right, r }
}

/// Minimizes a Lipschitz function over `[a, b]` with the sawtooth method:
/// keep a piecewise-linear lower envelope from cones of slope `k` at the
/// evaluated points, always refine the subinterval whose envelope dips
/// lowest below the record, and stop once that subinterval is shorter
/// than `epsilon`.
pub fn pijavskii_minimize<F>(
    mut f: F,
    a: f64,
    b: f64,
    k: f64,
    epsilon: f64,
    max_iterations: u64,
) -> Result<SawtoothRun, SolveError>
where
    F: FnMut(f64) -> Result<f64, ProblemError>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(SolveError::Problem(ProblemError::BadDomain { a, b }));
    }
    if !(k.is_finite() && k > 0.0) {
        return Err(SolveError::Problem(ProblemError::BadLipschitzBound {
            what: "sawtooth target".to_owned(),
            k,
        }));
    }

    let mut trials: Vec<Trial> = Vec::new();
    let mut best: Option<FeasibleBest> = None;
    let mut evaluate = |x: f64,
                        trials: &mut Vec<Trial>,
                        best: &mut Option<FeasibleBest>|
     -> Result<(Trial, bool), SolveError> {
        let raw = f(x)?;
        let trial = Trial { x, index: 1, raw };
        trials.push(trial);
        let improved = FeasibleBest::update(best, &trial, 0);
        Ok((trial, improved))
    };

    let (left, _) = evaluate(a, &mut trials, &mut best)?;
    let (right, _) = evaluate(b, &mut trials, &mut best)?;
    let mut spans: Vec<Span> = Vec::new();
    let first = span(left, right, k, best.unwrap().f);
    if first.r <= 0.0 {
        spans.push(first);
    }

    let finish = |status: SolveStatus, lower: f64, trials: Vec<Trial>, best: FeasibleBest| {
        let iterations = trials.len() as u64;
        SawtoothRun {
            status,
            best,
            lower_bound: lower,
            iterations,
            trials,
        }
    };

    loop {
        let record = best.unwrap();
        if spans.is_empty() {
            // Every subinterval is certified not to dip below the record,
            // so the record is the exact minimum.
            return Ok(finish(
                SolveStatus::AccuracyReached,
                record.f,
                trials,
                record,
            ));
        }
        let mut sel = 0;
        for (i, s) in spans.iter().enumerate().skip(1) {
            if s.r < spans[sel].r {
                sel = i;
            }
        }
        let r_t = spans[sel].r;
        let lower = r_t + record.f;
        if spans[sel].right.x - spans[sel].left.x <= epsilon {
            return Ok(finish(SolveStatus::AccuracyReached, lower, trials, record));
        }
        if trials.len() as u64 >= max_iterations {
            return Ok(finish(SolveStatus::BudgetExhausted, lower, trials, record));
        }

        let Span { left, right, .. } = spans.remove(sel);
        let z_l = reduced_value(&left, 0, Some(record.f));
        let z_r = reduced_value(&right, 0, Some(record.f));
        let x = support::crossing_point(left.x, right.x, z_l, z_r, k);
        if !(left.x < x && x < right.x) {
            return Err(SolveError::NonInteriorPoint {
                x,
                left: left.x,
                right: right.x,
            });
        }
        let (trial, improved) = evaluate(x, &mut trials, &mut best)?;
        let best_f = best.unwrap().f;
        if improved {
            for s in spans.iter_mut() {
                *s = span(s.left, s.right, k, best_f);
            }
            spans.retain(|s| s.r <= 0.0);
        }
        for child in [span(left, trial, k, best_f), span(trial, right, k, best_f)] {
            if child.r <= 0.0 {
                let pos = spans.partition_point(|s| s.left.x < child.left.x);
                spans.insert(pos, child);
            }
        }
    }
}

fn coefficient(config: &PenaltyConfig, round: u64) -> f64 {
    match round {
        1 => config.initial_coefficient,
        2 => config.restart_coefficient,
        n => config.restart_coefficient + (n - 2) as f64 * config.coefficient_increment,
    }
}

/// Solves the constrained problem by penalty tuning: run the sawtooth on
/// `F_P`, check the returned point against the real constraints, and
/// raise `P` until the point is feasible (or the round cap is hit).
pub fn tune_penalty(spec: &ProblemSpec, config: &PenaltyConfig) -> Result<PenOutcome, PenError> {
    spec.validate().map_err(|e| PenError::Solve(e.into()))?;
    let m = spec.m();
    for j in 1..=m {
        if spec.function(j).partial {
            return Err(PenError::PartialConstraint { index: j });
        }
    }

    let max_constraint_k = spec
        .constraints
        .iter()
        .map(|c| c.k)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut ledger = EvaluationLedger::new(m);
    let max_rounds = if m == 0 { 1 } else { config.max_rounds.max(1) };

    let mut round = 0;
    loop {
        round += 1;
        let p = if m == 0 {
            0.0
        } else {
            coefficient(config, round)
        };
        let k_pen = if m == 0 {
            spec.objective.k
        } else {
            spec.objective.k + p * max_constraint_k
        };

        let run = {
            let ledger = &mut ledger;
            let penalized = |x: f64| -> Result<f64, ProblemError> {
                let mut worst = 0.0f64;
                for j in 1..=m {
                    worst = worst.max(spec.eval_function(j, x)?);
                }
                let f = spec.eval_function(m + 1, x)?;
                ledger.record_trial(m + 1);
                Ok(f + p * worst)
            };
            pijavskii_minimize(
                penalized,
                spec.a,
                spec.b,
                k_pen,
                config.epsilon,
                config.max_iterations,
            )?
        };

        // The feasibility check and the reporting value are diagnostics,
        // not part of the method's work, and are not charged to the ledger.
        let x = run.best.x;
        let mut feasible = true;
        for j in 1..=m {
            if spec.eval_function(j, x)? > config.feasibility_tolerance {
                feasible = false;
                break;
            }
        }
        let value = spec.eval_function(m + 1, x)?;

        let status = if run.status == SolveStatus::BudgetExhausted {
            PenStatus::BudgetExhausted
        } else if feasible {
            PenStatus::Solved
        } else if round >= max_rounds {
            PenStatus::TuningFailed
        } else {
            continue;
        };

        let trials: Vec<Trial> = run
            .trials
            .iter()
            .map(|t| Trial {
                x: t.x,
                index: m + 1,
                raw: t.raw,
            })
            .collect();
        let trace = config.emit_trace.then(|| {
            let mut zstar = f64::INFINITY;
            let records = run
                .trials
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    zstar = zstar.min(t.raw);
                    TraceRecord {
                        k: i as u64 + 1,
                        x: t.x,
                        index: m + 1,
                        raw: t.raw,
                        zstar: Some(zstar),
                        t: None,
                        r: None,
                    }
                })
                .collect();
            Trace {
                problem: spec.name.clone(),
                method: "pen".to_owned(),
                a: spec.a,
                b: spec.b,
                m,
                records,
            }
        });
        return Ok(PenOutcome {
            status,
            x,
            value,
            pstar: p,
            rounds: round,
            lower_bound: run.lower_bound,
            ledger,
            trials,
            trace,
        });
    }
}
