//! Problem model: a box-constrained scalar objective with an ordered list of
//! inequality constraints, plus the bookkeeping that charges every function
//! evaluation to the function that performed it.
//!
//! A problem is
//!
//! ```text
//! minimize    f(x)            over x in [a, b]
//! subject to  g_j(x) <= 0     for j = 1..m
//! ```
//!
//! where the constraints are *ordered*: solvers in this crate evaluate
//! `g_1, g_2, ...` left to right and stop at the first violated one, so
//! cheap or frequently-violated constraints should come first. Internally
//! the objective is treated as constraint number `m + 1`.
//!
//! Every function must come with a Lipschitz bound `K` that is not smaller
//! than the function's true Lipschitz constant over `[a, b]`; the solvers'
//! convergence and infeasibility certificates are only valid under that
//! bound. Bounds are supplied by the caller and never estimated here (the
//! [`crate::oracle`] module can estimate them for testing).

use crate::expr::{EvalError, Expr};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One function of the problem: an expression plus its Lipschitz bound.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub expr: Expr,
    /// Lipschitz bound over the domain. Must be positive and finite.
    pub k: f64,
    /// Marks a constraint as only partially defined: outside its natural
    /// domain the expression may fail to evaluate. Solvers that cannot
    /// honor partial functions must reject the problem up front.
    pub partial: bool,
}

impl FunctionDef {
    pub fn new(expr: Expr, k: f64) -> FunctionDef {
        FunctionDef {
            expr,
            k,
            partial: false,
        }
    }
}

/// Optional known solution, used for reporting only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub x: f64,
    pub f: Option<f64>,
}

/// A complete problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    /// Left end of the search interval.
    pub a: f64,
    /// Right end of the search interval.
    pub b: f64,
    /// Ordered constraints `g_1..g_m`.
    pub constraints: Vec<FunctionDef>,
    pub objective: FunctionDef,
    pub reference: Option<Reference>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("domain is empty or not finite: [{a}, {b}]")]
    BadDomain { a: f64, b: f64 },
    #[error("Lipschitz bound for {what} must be positive and finite, got {k}")]
    BadLipschitzBound { what: String, k: f64 },
    #[error("{what} failed to evaluate at x = {x}: {source}")]
    Evaluation {
        what: String,
        x: f64,
        source: EvalError,
    },
}

impl ProblemSpec {
    pub fn new(
        name: impl Into<String>,
        a: f64,
        b: f64,
        constraints: Vec<FunctionDef>,
        objective: FunctionDef,
    ) -> ProblemSpec {
        ProblemSpec {
            name: name.into(),
            a,
            b,
            constraints,
            objective,
            reference: None,
        }
    }

    /// Number of constraints, `m`.
    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    /// The functions in evaluation order: `g_1..g_m` then the objective.
    /// 1-based position in this order is the *index* of a point whose first
    /// violated constraint is that function (index `m + 1` means feasible).
    pub fn function(&self, j: usize) -> &FunctionDef {
        debug_assert!(j >= 1 && j <= self.m() + 1);
        if j <= self.m() {
            &self.constraints[j - 1]
        } else {
            &self.objective
        }
    }

    fn function_name(&self, j: usize) -> String {
        if j <= self.m() {
            format!("constraint {j}")
        } else {
            "objective".to_owned()
        }
    }

    /// Structural checks: finite non-empty domain and positive finite
    /// Lipschitz bounds. Never evaluates any expression; a problem can be
    /// valid here and still fail at run time (e.g. `log` leaving its
    /// domain), which solvers report as an evaluation error at the
    /// offending point.
    pub fn validate(&self) -> Result<(), ProblemError> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(ProblemError::BadDomain {
                a: self.a,
                b: self.b,
            });
        }
        for j in 1..=self.m() + 1 {
            let k = self.function(j).k;
            if !(k.is_finite() && k > 0.0) {
                return Err(ProblemError::BadLipschitzBound {
                    what: self.function_name(j),
                    k,
                });
            }
        }
        Ok(())
    }

    /// Evaluates function `j` (1-based, `m + 1` is the objective) at `x`,
    /// wrapping any failure with the function's name and the point.
    pub fn eval_function(&self, j: usize, x: f64) -> Result<f64, ProblemError> {
        self.function(j)
            .expr
            .eval(x)
            .map_err(|source| ProblemError::Evaluation {
                what: self.function_name(j),
                x,
                source,
            })
    }
}

/// Per-index trial counts.
///
/// `counts[j-1]` is the number of trials whose index came out as `j`
/// (i.e. `g_j` was the first violated constraint there) and `n_f` the
/// number of trials that reached the objective. The *weighted* total
/// charges an index-`j` trial a cost of `j` and a feasible trial a cost of
/// `m + 1`, because the ordered scheme computes `g_1..g_j` (respectively
/// everything plus the objective) at that point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationLedger {
    pub counts: Vec<u64>,
    pub n_f: u64,
    /// Total number of trial points (every trial increments exactly one
    /// count, so this equals `counts.iter().sum() + n_f`).
    pub iterations: u64,
}

impl EvaluationLedger {
    pub fn new(m: usize) -> EvaluationLedger {
        EvaluationLedger {
            counts: vec![0; m],
            n_f: 0,
            iterations: 0,
        }
    }

    /// Records one trial whose index came out as `index` (1-based;
    /// `m + 1` means the point was feasible and the objective was
    /// evaluated).
    pub fn record_trial(&mut self, index: usize) {
        let m = self.counts.len();
        debug_assert!(index >= 1 && index <= m + 1);
        if index <= m {
            self.counts[index - 1] += 1;
        } else {
            self.n_f += 1;
        }
        self.iterations += 1;
    }

    /// Weighted evaluation total: `sum_j j * N_gj + (m + 1) * N_f`.
    pub fn weighted(&self) -> u64 {
        let m = self.counts.len() as u64;
        let constraints: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, n)| (i as u64 + 1) * n)
            .sum();
        constraints + (m + 1) * self.n_f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn def(src: &str, k: f64) -> FunctionDef {
        FunctionDef::new(parse(src).unwrap(), k)
    }

    #[test]
    fn validate_accepts_well_formed_problem() {
        let p = ProblemSpec::new("t", -1.0, 1.0, vec![def("x", 1.0)], def("x^2", 2.0));
        assert_eq!(p.validate(), Ok(()));
        assert_eq!(p.m(), 1);
    }

    #[test]
    fn validate_rejects_bad_domain() {
        let p = ProblemSpec::new("t", 1.0, 1.0, vec![], def("x", 1.0));
        assert!(matches!(p.validate(), Err(ProblemError::BadDomain { .. })));
        let p = ProblemSpec::new("t", f64::NEG_INFINITY, 1.0, vec![], def("x", 1.0));
        assert!(matches!(p.validate(), Err(ProblemError::BadDomain { .. })));
    }

    #[test]
    fn validate_rejects_bad_lipschitz_bound() {
        for k in [0.0, -3.0, f64::INFINITY, f64::NAN] {
            let p = ProblemSpec::new("t", 0.0, 1.0, vec![def("x", k)], def("x", 1.0));
            assert!(
                matches!(p.validate(), Err(ProblemError::BadLipschitzBound { .. })),
                "k = {k}"
            );
        }
    }

    #[test]
    fn validate_does_not_evaluate() {
        // log(x) is undefined on half the domain; validation must not care.
        let p = ProblemSpec::new("t", -1.0, 1.0, vec![], def("log(x)", 5.0));
        assert_eq!(p.validate(), Ok(()));
    }

    #[test]
    fn function_order_is_constraints_then_objective() {
        let p = ProblemSpec::new(
            "t",
            0.0,
            1.0,
            vec![def("x-1", 1.0), def("x-2", 1.0)],
            def("x^2", 2.0),
        );
        assert_eq!(p.function(1).expr, parse("x-1").unwrap());
        assert_eq!(p.function(2).expr, parse("x-2").unwrap());
        assert_eq!(p.function(3).expr, parse("x^2").unwrap());
    }

    #[test]
    fn eval_function_names_the_failure() {
        let p = ProblemSpec::new("t", -1.0, 1.0, vec![def("log(x)", 5.0)], def("x", 1.0));
        let err = p.eval_function(1, -0.5).unwrap_err();
        assert!(matches!(err, ProblemError::Evaluation { .. }));
        assert!(err.to_string().contains("constraint 1"));
    }

    #[test]
    fn ledger_weighted_total() {
        // Two constraints: 5 stops at g1, 3 stops at g2, 4 reach f.
        let mut ledger = EvaluationLedger::new(2);
        for _ in 0..5 {
            ledger.record_trial(1);
        }
        for _ in 0..3 {
            ledger.record_trial(2);
        }
        for _ in 0..4 {
            ledger.record_trial(3);
        }
        assert_eq!(ledger.counts, vec![5, 3]);
        assert_eq!(ledger.n_f, 4);
        assert_eq!(ledger.iterations, 12);
        // 1*5 + 2*3 + 3*4 = 23.
        assert_eq!(ledger.weighted(), 23);
    }

    #[test]
    fn ledger_unconstrained_charges_one_per_trial() {
        let mut ledger = EvaluationLedger::new(0);
        ledger.record_trial(1);
        ledger.record_trial(1);
        assert_eq!(ledger.n_f, 2);
        assert_eq!(ledger.weighted(), 2);
    }
}
