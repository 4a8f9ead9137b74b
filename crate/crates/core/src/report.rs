//! Run reports and method-comparison tables.
//!
//! A [`RunReport`] flattens a solver outcome into the usual result-table
//! columns (minimizer, value, per-function trial counts, iteration and
//! weighted evaluation totals). It renders as aligned plain text and, via
//! serde, as JSON for machine consumers.
//!
//! [`ComparisonTable`] lines up one problem per row with both methods'
//! iteration and weighted evaluation totals and their ratios
//! (penalty-method cost over index-method cost, so values above 1 mean
//! the index method was cheaper). The closing average row holds the
//! arithmetic means of the solved rows' columns; the speedup averages are
//! means of the per-row speedups, not ratios of the averaged costs. Rows
//! where either method failed show the failure inline and stay out of
//! every average.

use crate::ibba::{SolveOutcome, SolveStatus};
use crate::pen::{PenOutcome, PenStatus};
use crate::problem::{ProblemSpec, Reference};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Coarse classification of a run, shared by both methods. This is what
/// the command line turns into an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunClass {
    /// A certified minimizer was returned.
    Solved,
    /// The feasible set was proven empty.
    Infeasible,
    /// Stopped at resolution without an answer either way.
    Unresolved,
    /// The trial budget ran out.
    Budget,
}

/// One solver run, flattened for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    /// `"ibba"` or `"pen"`.
    pub method: String,
    pub status: String,
    pub class: RunClass,
    /// Returned minimizer, when the run produced one.
    pub x: Option<f64>,
    /// Objective value at `x`.
    pub f: Option<f64>,
    /// Certified enclosure of the optimal value, when available.
    pub bounds: Option<(f64, f64)>,
    /// Trials that stopped at `g_1..g_m`.
    pub counts: Vec<u64>,
    /// Trials that reached the objective.
    pub n_f: u64,
    pub iterations: u64,
    /// Weighted evaluation total (an index-`j` trial costs `j`).
    pub weighted: u64,
    /// Final penalty coefficient; present only for the penalty method.
    pub pstar: Option<f64>,
    /// Known solution from the problem file, if any.
    pub reference: Option<Reference>,
}

impl RunReport {
    pub fn from_ibba(spec: &ProblemSpec, outcome: &SolveOutcome) -> RunReport {
        let (status, class) = match outcome.status {
            SolveStatus::AccuracyReached => ("accuracy reached", RunClass::Solved),
            SolveStatus::InfeasibleDetected => ("infeasible", RunClass::Infeasible),
            SolveStatus::FeasibilityUnresolved => ("feasibility unresolved", RunClass::Unresolved),
            SolveStatus::BudgetExhausted => ("budget exhausted", RunClass::Budget),
        };
        RunReport {
            problem: spec.name.clone(),
            method: "ibba".to_owned(),
            status: status.to_owned(),
            class,
            x: outcome.best.as_ref().map(|b| b.x),
            f: outcome.best.as_ref().map(|b| b.f),
            bounds: outcome.bounds,
            counts: outcome.ledger.counts.clone(),
            n_f: outcome.ledger.n_f,
            iterations: outcome.ledger.iterations,
            weighted: outcome.ledger.weighted(),
            pstar: None,
            reference: spec.reference,
        }
    }

    pub fn from_pen(spec: &ProblemSpec, outcome: &PenOutcome) -> RunReport {
        let (status, class) = match outcome.status {
            PenStatus::Solved => ("solved", RunClass::Solved),
            PenStatus::TuningFailed => ("penalty tuning failed", RunClass::Unresolved),
            PenStatus::BudgetExhausted => ("budget exhausted", RunClass::Budget),
        };
        let solved = outcome.status == PenStatus::Solved;
        RunReport {
            problem: spec.name.clone(),
            method: "pen".to_owned(),
            status: status.to_owned(),
            class,
            x: solved.then_some(outcome.x),
            f: solved.then_some(outcome.value),
            bounds: solved.then_some((outcome.lower_bound, outcome.value)),
            counts: outcome.ledger.counts.clone(),
            n_f: outcome.ledger.n_f,
            iterations: outcome.ledger.iterations,
            weighted: outcome.ledger.weighted(),
            pstar: Some(outcome.pstar),
            reference: spec.reference,
        }
    }

    /// Aligned key-value text. The minimizer and value rows borrow the
    /// traditional column names (`XIBBA`/`FIBBA`, `XPEN`/`FXPEN`), and the
    /// weighted total renders as `Eval.`.
    pub fn render(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("problem".to_owned(), self.problem.clone()),
            ("method".to_owned(), self.method.clone()),
            ("status".to_owned(), self.status.clone()),
        ];
        let (x_label, f_label) = if self.method == "pen" {
            ("XPEN", "FXPEN")
        } else {
            ("XIBBA", "FIBBA")
        };
        if let Some(x) = self.x {
            rows.push((x_label.to_owned(), format!("{x:.8}")));
        }
        if let Some(f) = self.f {
            rows.push((f_label.to_owned(), format!("{f:.8}")));
        }
        if let Some((lo, hi)) = self.bounds {
            rows.push(("bounds".to_owned(), format!("[{lo:.8}, {hi:.8}]")));
        }
        if let Some(p) = self.pstar {
            rows.push(("P*".to_owned(), format!("{p}")));
        }
        for (i, n) in self.counts.iter().enumerate() {
            rows.push((format!("N_g{}", i + 1), n.to_string()));
        }
        rows.push(("N_f".to_owned(), self.n_f.to_string()));
        rows.push(("Iterations".to_owned(), self.iterations.to_string()));
        rows.push(("Eval.".to_owned(), self.weighted.to_string()));
        if let Some(r) = self.reference {
            let f = r.f.map_or(String::new(), |f| format!(" {f:.8}"));
            rows.push(("reference".to_owned(), format!("{:.8}{f}", r.x)));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// One comparison row. A method that did not certify a solution leaves
/// its columns empty and puts the reason in `note`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub problem: String,
    pub pen_iterations: Option<u64>,
    pub ibba_iterations: Option<u64>,
    /// `pen_iterations / ibba_iterations`; present when both solved.
    pub iteration_speedup: Option<f64>,
    pub pen_weighted: Option<u64>,
    pub ibba_weighted: Option<u64>,
    /// `pen_weighted / ibba_weighted`; present when both solved.
    pub evaluation_speedup: Option<f64>,
    pub note: Option<String>,
}

impl ComparisonRow {
    /// Builds a row from the two reports of one problem. `Err` carries
    /// the rendered failure of a method that did not produce a report at
    /// all (an evaluation error, say); a report whose class is not
    /// [`RunClass::Solved`] is also treated as a failure.
    pub fn new(
        problem: &str,
        pen: Result<&RunReport, &str>,
        ibba: Result<&RunReport, &str>,
    ) -> ComparisonRow {
        let mut notes = Vec::new();
        let mut usable = |label: &str, r: Result<&RunReport, &str>| match r {
            Ok(report) if report.class == RunClass::Solved => {
                Some((report.iterations, report.weighted))
            }
            Ok(report) => {
                notes.push(format!("{label}: {}", report.status));
                None
            }
            Err(msg) => {
                notes.push(format!("{label}: {msg}"));
                None
            }
        };
        let pen = usable("pen", pen);
        let ibba = usable("ibba", ibba);
        let ratio = |a: u64, b: u64| a as f64 / b as f64;
        ComparisonRow {
            problem: problem.to_owned(),
            pen_iterations: pen.map(|(i, _)| i),
            ibba_iterations: ibba.map(|(i, _)| i),
            iteration_speedup: pen.zip(ibba).map(|(p, i)| ratio(p.0, i.0)),
            pen_weighted: pen.map(|(_, w)| w),
            ibba_weighted: ibba.map(|(_, w)| w),
            evaluation_speedup: pen.zip(ibba).map(|(p, i)| ratio(p.1, i.1)),
            note: (!notes.is_empty()).then(|| notes.join("; ")),
        }
    }

    fn solved(&self) -> bool {
        self.iteration_speedup.is_some()
    }
}

/// Column means over the rows where both methods solved the problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonAverage {
    pub pen_iterations: f64,
    pub ibba_iterations: f64,
    /// Arithmetic mean of the per-row iteration speedups.
    pub iteration_speedup: f64,
    pub pen_weighted: f64,
    pub ibba_weighted: f64,
    /// Arithmetic mean of the per-row evaluation speedups.
    pub evaluation_speedup: f64,
    /// Number of rows included.
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Absent when no row has both methods solved.
    pub average: Option<ComparisonAverage>,
}

impl ComparisonTable {
    pub fn new(rows: Vec<ComparisonRow>) -> ComparisonTable {
        let solved: Vec<&ComparisonRow> = rows.iter().filter(|r| r.solved()).collect();
        let mean = |f: &dyn Fn(&ComparisonRow) -> f64| {
            solved.iter().map(|r| f(r)).sum::<f64>() / solved.len() as f64
        };
        let average = (!solved.is_empty()).then(|| ComparisonAverage {
            pen_iterations: mean(&|r| r.pen_iterations.unwrap() as f64),
            ibba_iterations: mean(&|r| r.ibba_iterations.unwrap() as f64),
            iteration_speedup: mean(&|r| r.iteration_speedup.unwrap()),
            pen_weighted: mean(&|r| r.pen_weighted.unwrap() as f64),
            ibba_weighted: mean(&|r| r.ibba_weighted.unwrap() as f64),
            evaluation_speedup: mean(&|r| r.evaluation_speedup.unwrap()),
            rows: solved.len(),
        });
        ComparisonTable { rows, average }
    }

    /// Plain-text table: a problem column, then iteration and evaluation
    /// triples (`PEN`, `IBBA`, `Speedup`), then the average row.
    pub fn render(&self) -> String {
        let name_width = self
            .rows
            .iter()
            .map(|r| r.problem.len())
            .chain(["Problem".len(), "Average".len()])
            .max()
            .unwrap();
        let mut out = String::new();
        writeln!(
            out,
            "{:<name_width$}  {:>30}  {:>30}",
            "", "Iterations", "Evaluations"
        )
        .unwrap();
        writeln!(
            out,
            "{:<name_width$}  {:>8} {:>8} {:>12}  {:>8} {:>8} {:>12}",
            "Problem", "PEN", "IBBA", "Speedup", "PEN", "IBBA", "Speedup"
        )
        .unwrap();
        let opt_u = |v: Option<u64>| v.map_or_else(|| "-".to_owned(), |v| v.to_string());
        let opt_ratio = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |v| format!("{v:.2}"));
        for row in &self.rows {
            write!(
                out,
                "{:<name_width$}  {:>8} {:>8} {:>12}  {:>8} {:>8} {:>12}",
                row.problem,
                opt_u(row.pen_iterations),
                opt_u(row.ibba_iterations),
                opt_ratio(row.iteration_speedup),
                opt_u(row.pen_weighted),
                opt_u(row.ibba_weighted),
                opt_ratio(row.evaluation_speedup),
            )
            .unwrap();
            match &row.note {
                Some(note) => writeln!(out, "  ({note})").unwrap(),
                None => out.push('\n'),
            }
        }
        if let Some(avg) = &self.average {
            writeln!(
                out,
                "{:<name_width$}  {:>8.1} {:>8.1} {:>12.2}  {:>8.1} {:>8.1} {:>12.2}",
                "Average",
                avg.pen_iterations,
                avg.ibba_iterations,
                avg.iteration_speedup,
                avg.pen_weighted,
                avg.ibba_weighted,
                avg.evaluation_speedup,
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }
}
