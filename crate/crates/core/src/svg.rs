//! Dynamic diagrams: an SVG rendering of one solver run.
//!
//! The picture follows the classic presentation of index-scheme runs. The
//! plot area shows the objective curve as a thin line, with the parts
//! whose points satisfy every constraint drawn bold, so disjoint feasible
//! subregions appear as separate bold strokes. Under the plot there is
//! one row of `+` marks per constraint level: a mark in row `j` is a
//! trial whose index came out as `j` (row `m + 1`, labelled `f`, holds
//! the feasible trials). Penalty-method traces evaluate everything at
//! every trial, so they render a single row. Reading the rows top to
//! bottom therefore shows where each function stopped the evaluation
//! chain, and the mark counts reproduce the run's ledger.
//!
//! The canvas is a fixed 900 by 675 pixels and every coordinate is
//! derived deterministically from the inputs, so rendered bytes are
//! stable and can be golden-file tested.

use crate::problem::ProblemSpec;
use crate::trace::Trace;
use std::fmt::Write as _;
use thiserror::Error;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 675.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 880.0;
const TOP: f64 = 34.0;
const ROW_HEIGHT: f64 = 22.0;
const SAMPLES: usize = 600;

/// The trace does not belong to the problem file it was rendered with.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvgError {
    #[error("trace is for problem {trace:?}, file defines {spec:?}")]
    ProblemMismatch { spec: String, trace: String },
    #[error("trace domain [{}, {}] differs from the problem's [{}, {}]", trace.0, trace.1, spec.0, spec.1)]
    DomainMismatch { spec: (f64, f64), trace: (f64, f64) },
    #[error("trace has {trace} constraints, the problem has {spec}")]
    ConstraintMismatch { spec: usize, trace: usize },
}

fn check(spec: &ProblemSpec, trace: &Trace) -> Result<(), SvgError> {
    if spec.name != trace.problem {
        return Err(SvgError::ProblemMismatch {
            spec: spec.name.clone(),
            trace: trace.problem.clone(),
        });
    }
    if spec.a != trace.a || spec.b != trace.b {
        return Err(SvgError::DomainMismatch {
            spec: (spec.a, spec.b),
            trace: (trace.a, trace.b),
        });
    }
    if spec.m() != trace.m {
        return Err(SvgError::ConstraintMismatch {
            spec: spec.m(),
            trace: trace.m,
        });
    }
    Ok(())
}

/// True when every constraint evaluates and holds at `x`, checked in
/// order so partially defined constraints are only reached inside their
/// guards.
fn chain_holds(spec: &ProblemSpec, x: f64) -> bool {
    for j in 1..=spec.m() {
        match spec.eval_function(j, x) {
            Ok(v) if v <= 0.0 => continue,
            _ => return false,
        }
    }
    true
}

fn polyline(out: &mut String, class: &str, width: u32, points: &[(f64, f64)]) {
    if points.len() == 1 {
        // A one-point polyline draws nothing; stretch it to a visible dash.
        let (x, y) = points[0];
        writeln!(
            out,
            r#"<line class="{class}" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="{width}"/>"#,
            x - 2.0,
            x + 2.0,
        )
        .unwrap();
        return;
    }
    let mut coords = String::new();
    for (x, y) in points {
        if !coords.is_empty() {
            coords.push(' ');
        }
        write!(coords, "{x:.2},{y:.2}").unwrap();
    }
    writeln!(
        out,
        r#"<polyline class="{class}" points="{coords}" fill="none" stroke="black" stroke-width="{width}"/>"#
    )
    .unwrap();
}

/// Renders the run recorded in `trace` over the problem it was produced
/// from. Fails if the trace does not match the problem.
pub fn render(spec: &ProblemSpec, trace: &Trace) -> Result<String, SvgError> {
    check(spec, trace)?;
    let rows = if trace.method == "pen" {
        1
    } else {
        spec.m() + 1
    };
    let marks_top = HEIGHT - 14.0 - rows as f64 * ROW_HEIGHT;
    let plot_bottom = marks_top - 10.0;
    let x_px = |x: f64| LEFT + (x - spec.a) / (spec.b - spec.a) * (RIGHT - LEFT);

    // Sample the objective once; both the thin curve and the bold
    // feasible overlay reuse the same points.
    let samples: Vec<(f64, Option<f64>, bool)> = (0..=SAMPLES)
        .map(|i| {
            let x = if i == SAMPLES {
                spec.b
            } else {
                spec.a + (spec.b - spec.a) * i as f64 / SAMPLES as f64
            };
            let f = spec.eval_function(spec.m() + 1, x).ok();
            (x, f, chain_holds(spec, x))
        })
        .collect();
    let defined = samples.iter().filter_map(|(_, f, _)| *f);
    let (lo, hi) = defined.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let (lo, hi) = if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 1.0, hi + 1.0)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    };
    let y_px = |v: f64| plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - TOP);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<text class="title" x="{LEFT}" y="20" font-family="monospace" font-size="14">{} ({})</text>"#,
        spec.name, trace.method
    )
    .unwrap();

    // Axes and tick labels.
    writeln!(
        out,
        r#"<line class="axis" x1="{LEFT}" y1="{plot_bottom:.2}" x2="{RIGHT}" y2="{plot_bottom:.2}" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{plot_bottom:.2}" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();
    for (x, anchor) in [(spec.a, "start"), (spec.b, "end")] {
        writeln!(
            out,
            r#"<text class="tick" x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" text-anchor="{anchor}">{x}</text>"#,
            x_px(x),
            plot_bottom + 12.0,
        )
        .unwrap();
    }
    for (v, y) in [(lo, plot_bottom), (hi, TOP + 4.0)] {
        writeln!(
            out,
            r#"<text class="tick" x="{:.2}" y="{y:.2}" font-family="monospace" font-size="11" text-anchor="end">{v:.4}</text>"#,
            LEFT - 4.0,
        )
        .unwrap();
    }

    // Thin objective curve, split where the objective is undefined.
    let mut run: Vec<(f64, f64)> = Vec::new();
    for (x, f, _) in &samples {
        match f {
            Some(f) => run.push((x_px(*x), y_px(*f))),
            None => {
                if !run.is_empty() {
                    polyline(&mut out, "objective", 1, &run);
                    run.clear();
                }
            }
        }
    }
    if !run.is_empty() {
        polyline(&mut out, "objective", 1, &run);
        run.clear();
    }

    // Bold overlay where the full constraint chain holds.
    for (x, f, feasible) in &samples {
        match f {
            Some(f) if *feasible => run.push((x_px(*x), y_px(*f))),
            _ => {
                if !run.is_empty() {
                    polyline(&mut out, "feasible", 3, &run);
                    run.clear();
                }
            }
        }
    }
    if !run.is_empty() {
        polyline(&mut out, "feasible", 3, &run);
    }

    // One row of marks per index level, top row is index 1.
    for level in 1..=rows {
        let label = if trace.method == "pen" {
            "trials".to_owned()
        } else if level <= spec.m() {
            format!("g{level}")
        } else {
            "f".to_owned()
        };
        writeln!(
            out,
            r#"<text class="row-label" x="{:.2}" y="{:.2}" font-family="monospace" font-size="11" text-anchor="end">{label}</text>"#,
            LEFT - 4.0,
            marks_top + (level as f64 - 0.5) * ROW_HEIGHT + 4.0,
        )
        .unwrap();
    }
    for record in &trace.records {
        let level = if trace.method == "pen" {
            1
        } else {
            record.index
        };
        writeln!(
            out,
            r#"<text class="mark l{level}" x="{:.2}" y="{:.2}" font-family="monospace" font-size="12" text-anchor="middle">+</text>"#,
            x_px(record.x),
            marks_top + (level as f64 - 0.5) * ROW_HEIGHT + 4.0,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ibba::{solve, SolverConfig};
    use crate::pen::{tune_penalty, PenaltyConfig};

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    fn traced_config() -> SolverConfig {
        SolverConfig {
            emit_trace: true,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn mark_rows_reproduce_the_ledger() {
        let spec = fixtures::two_pockets();
        let outcome = solve(&spec, &traced_config()).unwrap();
        let svg = render(&spec, outcome.trace.as_ref().unwrap()).unwrap();
        for (i, n) in outcome.ledger.counts.iter().enumerate() {
            let marks = count(&svg, &format!("class=\"mark l{}\"", i + 1));
            assert_eq!(marks as u64, *n, "level {}", i + 1);
        }
        let feasible_marks = count(&svg, &format!("class=\"mark l{}\"", spec.m() + 1));
        assert_eq!(feasible_marks as u64, outcome.ledger.n_f);
        assert_eq!(
            count(&svg, "class=\"mark"),
            outcome.ledger.iterations as usize
        );
    }

    #[test]
    fn pen_traces_render_one_row() {
        let spec = fixtures::two_pockets();
        let config = PenaltyConfig {
            emit_trace: true,
            ..PenaltyConfig::default()
        };
        let outcome = tune_penalty(&spec, &config).unwrap();
        let trace = outcome.trace.as_ref().unwrap();
        let svg = render(&spec, trace).unwrap();
        assert_eq!(count(&svg, "class=\"row-label\""), 1);
        // The trace holds the last round only; every mark is on that row.
        assert_eq!(count(&svg, "class=\"mark l1\""), trace.records.len());
        assert_eq!(count(&svg, "class=\"mark"), trace.records.len());
    }

    #[test]
    fn disjoint_feasible_subregions_appear_as_separate_bold_strokes() {
        let spec = fixtures::two_pockets();
        let outcome = solve(&spec, &traced_config()).unwrap();
        let svg = render(&spec, outcome.trace.as_ref().unwrap()).unwrap();
        assert_eq!(count(&svg, "class=\"feasible\""), 2);
        assert!(count(&svg, "class=\"objective\"") >= 1);
    }

    #[test]
    fn empty_trace_still_renders_axes() {
        let spec = fixtures::two_pockets();
        let trace = Trace {
            problem: spec.name.clone(),
            method: "ibba".to_owned(),
            a: spec.a,
            b: spec.b,
            m: spec.m(),
            records: Vec::new(),
        };
        let svg = render(&spec, &trace).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(count(&svg, "class=\"axis\""), 2);
        assert_eq!(count(&svg, "class=\"mark"), 0);
    }

    #[test]
    fn canvas_size_is_fixed() {
        let spec = fixtures::kink();
        let outcome = solve(&spec, &traced_config()).unwrap();
        let svg = render(&spec, outcome.trace.as_ref().unwrap()).unwrap();
        assert!(svg.contains("width=\"900\" height=\"675\""));
    }

    #[test]
    fn mismatched_traces_are_rejected() {
        let spec = fixtures::two_pockets();
        let outcome = solve(&spec, &traced_config()).unwrap();
        let good = outcome.trace.unwrap();

        let mut wrong_name = good.clone();
        wrong_name.problem = "something else".to_owned();
        assert!(matches!(
            render(&spec, &wrong_name),
            Err(SvgError::ProblemMismatch { .. })
        ));

        let mut wrong_domain = good.clone();
        wrong_domain.b += 1.0;
        assert!(matches!(
            render(&spec, &wrong_domain),
            Err(SvgError::DomainMismatch { .. })
        ));

        let mut wrong_m = good;
        wrong_m.m = 0;
        assert!(matches!(
            render(&spec, &wrong_m),
            Err(SvgError::ConstraintMismatch { .. })
        ));
    }

    #[test]
    fn partial_functions_split_the_curve_instead_of_failing() {
        let spec = fixtures::guarded_log();
        let outcome = solve(&spec, &traced_config()).unwrap();
        let svg = render(&spec, outcome.trace.as_ref().unwrap()).unwrap();
        assert!(count(&svg, "class=\"objective\"") >= 1);
    }
}
