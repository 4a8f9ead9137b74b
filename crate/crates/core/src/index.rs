//! Trial points and the ordered-constraint evaluation scheme.
//!
//! A *trial* at `x` evaluates the constraints in their given order and
//! stops at the first violation: if `g_1(x), ..., g_{j-1}(x) <= 0` and
//! `g_j(x) > 0`, the trial's *index* is `j` and only those `j` functions
//! were computed. If all constraints hold, the objective is evaluated and
//! the index is `m + 1`. The index of a point therefore tells both how
//! feasible it is and how much it cost.
//!
//! This short-circuiting is what makes partially defined constraints
//! usable: `g_j` is only ever evaluated where `g_1..g_{j-1}` already hold,
//! so earlier constraints can guard later ones' domains.

use crate::problem::{EvaluationLedger, ProblemError, ProblemSpec};

/// One evaluated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trial {
    pub x: f64,
    /// 1-based position of the first violated constraint, or `m + 1` if
    /// the point is feasible.
    pub index: usize,
    /// Value of the function that decided the index: `g_index(x)` for an
    /// infeasible point (positive), `f(x)` for a feasible one.
    pub raw: f64,
}

impl Trial {
    pub fn is_feasible(&self, m: usize) -> bool {
        self.index == m + 1
    }
}

/// Performs one trial at `x`: evaluates `g_1, g_2, ...` until the first
/// strictly positive value, falling through to the objective when every
/// constraint holds (`g_j(x) = 0` counts as holding). Exactly `index`
/// expressions are evaluated; the ledger is charged accordingly.
pub fn evaluate_index(
    spec: &ProblemSpec,
    x: f64,
    ledger: &mut EvaluationLedger,
) -> Result<Trial, ProblemError> {
    let m = spec.m();
    for j in 1..=m {
        let v = spec.eval_function(j, x)?;
        if v > 0.0 {
            ledger.record_trial(j);
            return Ok(Trial {
                x,
                index: j,
                raw: v,
            });
        }
    }
    let v = spec.eval_function(m + 1, x)?;
    ledger.record_trial(m + 1);
    Ok(Trial {
        x,
        index: m + 1,
        raw: v,
    })
}

/// Best feasible point found so far: the running minimum of the objective
/// over feasible trials, with the `x` that attained it. Ties keep the
/// first point seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleBest {
    pub x: f64,
    pub f: f64,
}

impl FeasibleBest {
    /// Folds a trial into `best`, returning `true` exactly when the
    /// feasible record strictly improved (which is the signal that
    /// dependent quantities must be recomputed).
    pub fn update(best: &mut Option<FeasibleBest>, trial: &Trial, m: usize) -> bool {
        if !trial.is_feasible(m) {
            return false;
        }
        match best {
            Some(cur) if trial.raw >= cur.f => false,
            _ => {
                *best = Some(FeasibleBest {
                    x: trial.x,
                    f: trial.raw,
                });
                true
            }
        }
    }
}

/// The solver's working height of a trial: the raw constraint value for an
/// infeasible point, and the objective value reduced by the feasible
/// record for a feasible one. Once the record accounts for the trial this
/// is nonnegative, and it is zero exactly at the current best feasible
/// point.
///
/// `best_f` must be present whenever the trial is feasible; the solver
/// updates the record before computing heights.
pub fn reduced_value(trial: &Trial, m: usize, best_f: Option<f64>) -> f64 {
    if trial.is_feasible(m) {
        trial.raw - best_f.expect("feasible trial requires a feasible record")
    } else {
        trial.raw
    }
}
