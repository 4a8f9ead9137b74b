//! Brute-force verification on dense grids.
//!
//! Nothing here shares logic with the solvers: this module only walks
//! uniform grids and evaluates expressions, so its answers are an
//! independent check on solver output. It is deliberately restricted to
//! importing [`crate::expr`] and [`crate::problem`].
//!
//! All scans are parallelized over contiguous chunks and merged strictly
//! left to right, so results are identical run to run regardless of
//! thread scheduling.

use crate::expr::Expr;
use crate::problem::ProblemSpec;
use rayon::prelude::*;

/// How often one constraint was violated over the grid, and by how much.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintProfile {
    /// Number of grid points with a strictly positive value.
    pub violated: u64,
    /// Largest positive value seen (0 when never violated).
    pub max_violation: f64,
}

/// Best feasible grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridBest {
    pub x: f64,
    pub f: f64,
}

/// Result of [`grid_minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    /// Number of grid intervals; the grid has `n + 1` points.
    pub n: usize,
    /// Points where every constraint held and the objective evaluated.
    pub feasible: u64,
    /// Points skipped because some expression failed to evaluate there.
    pub undefined: u64,
    /// Leftmost feasible point with the smallest objective value.
    pub best: Option<GridBest>,
    pub constraints: Vec<ConstraintProfile>,
}

impl GridReport {
    pub fn feasible_fraction(&self) -> f64 {
        self.feasible as f64 / (self.n + 1) as f64
    }
}

#[derive(Clone)]
struct ChunkStats {
    feasible: u64,
    undefined: u64,
    best: Option<GridBest>,
    constraints: Vec<ConstraintProfile>,
}

fn merge(mut left: ChunkStats, right: &ChunkStats) -> ChunkStats {
    left.feasible += right.feasible;
    left.undefined += right.undefined;
    // Left chunk covers smaller x, so a strict comparison keeps the
    // leftmost point among ties.
    left.best = match (left.best, right.best) {
        (Some(l), Some(r)) => Some(if r.f < l.f { r } else { l }),
        (l, r) => l.or(r),
    };
    for (a, b) in left.constraints.iter_mut().zip(&right.constraints) {
        a.violated += b.violated;
        a.max_violation = a.max_violation.max(b.max_violation);
    }
    left
}

/// Exhaustively classifies the `n + 1` uniform grid points of the
/// problem's domain.
///
/// Unlike the solvers, every constraint is evaluated at every point (no
/// short-circuiting), which yields a full violation profile. The
/// objective is evaluated only where all constraints hold. A point where
/// any needed expression fails to evaluate is counted in `undefined` and
/// otherwise ignored, so reports for problems with partially defined
/// functions understate feasibility; verification-grade answers need
/// functions that are total on the domain.
pub fn grid_minimize(spec: &ProblemSpec, n: usize) -> GridReport {
    assert!(n >= 1, "grid needs at least one interval");
    let m = spec.m();
    let h = (spec.b - spec.a) / n as f64;
    let point = |i: usize| -> f64 {
        if i == n {
            spec.b
        } else {
            spec.a + h * i as f64
        }
    };

    const CHUNK: usize = 8192;
    let starts: Vec<usize> = (0..=n).step_by(CHUNK).collect();
    let partials: Vec<ChunkStats> = starts
        .par_iter()
        .map(|&start| {
            let end = (start + CHUNK - 1).min(n);
            let mut stats = ChunkStats {
                feasible: 0,
                undefined: 0,
                best: None,
                constraints: vec![
                    ConstraintProfile {
                        violated: 0,
                        max_violation: 0.0,
                    };
                    m
                ],
            };
            'points: for i in start..=end {
                let x = point(i);
                let mut all_hold = true;
                for j in 1..=m {
                    let Ok(v) = spec.eval_function(j, x) else {
                        stats.undefined += 1;
                        continue 'points;
                    };
                    if v > 0.0 {
                        all_hold = false;
                        let prof = &mut stats.constraints[j - 1];
                        prof.violated += 1;
                        prof.max_violation = prof.max_violation.max(v);
                    }
                }
                if !all_hold {
                    continue;
                }
                let Ok(f) = spec.eval_function(m + 1, x) else {
                    stats.undefined += 1;
                    continue;
                };
                stats.feasible += 1;
                if stats.best.is_none_or(|b| f < b.f) {
                    stats.best = Some(GridBest { x, f });
                }
            }
            stats
        })
        .collect();

    let merged = partials
        .into_iter()
        .reduce(|l, r| merge(l, &r))
        .expect("at least one chunk");
    GridReport {
        n,
        feasible: merged.feasible,
        undefined: merged.undefined,
        best: merged.best,
        constraints: merged.constraints,
    }
}

/// Estimates the Lipschitz constant of `f` over `[a, b]` as the largest
/// slope between adjacent points of an `n`-interval uniform grid. This is
/// a lower bound on the true constant that converges to it from below as
/// the grid refines (for piecewise-smooth functions). Pairs where either
/// endpoint fails to evaluate are skipped; `None` means no valid pair
/// existed.
pub fn estimate_lipschitz(f: &Expr, a: f64, b: f64, n: usize) -> Option<f64> {
    assert!(n >= 1 && a < b);
    let h = (b - a) / n as f64;
    let point = |i: usize| -> f64 {
        if i == n {
            b
        } else {
            a + h * i as f64
        }
    };

    const CHUNK: usize = 8192;
    let starts: Vec<usize> = (0..n).step_by(CHUNK).collect();
    let best = starts
        .par_iter()
        .map(|&start| {
            let end = (start + CHUNK).min(n);
            let mut local: Option<f64> = None;
            let mut prev = f.eval(point(start)).ok();
            for i in start..end {
                let next = f.eval(point(i + 1)).ok();
                if let (Some(u), Some(v)) = (prev, next) {
                    let slope = ((v - u) / h).abs();
                    local = Some(local.map_or(slope, |s| s.max(slope)));
                }
                prev = next;
            }
            local
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .reduce(f64::max);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::problem::FunctionDef;

    fn def(src: &str, k: f64) -> FunctionDef {
        FunctionDef::new(parse(src).unwrap(), k)
    }

    #[test]
    fn finds_exact_grid_minimum() {
        let p = ProblemSpec::new("sq", -1.0, 1.0, vec![], def("x^2", 2.0));
        let r = grid_minimize(&p, 10);
        assert_eq!(r.feasible, 11);
        assert_eq!(r.undefined, 0);
        assert_eq!(r.best, Some(GridBest { x: 0.0, f: 0.0 }));
        assert_eq!(r.feasible_fraction(), 1.0);
    }

    #[test]
    fn ties_keep_the_leftmost_point() {
        let p = ProblemSpec::new("flat", 0.0, 1.0, vec![], def("0*x", 1.0));
        let r = grid_minimize(&p, 4);
        assert_eq!(r.best, Some(GridBest { x: 0.0, f: 0.0 }));
        // Symmetric double well: both minima hit grid points, left one wins.
        let p = ProblemSpec::new("w", -1.0, 1.0, vec![], def("(x^2-1/4)^2", 4.0));
        let r = grid_minimize(&p, 4);
        assert_eq!(r.best, Some(GridBest { x: -0.5, f: 0.0 }));
    }

    #[test]
    fn violation_profile_counts_and_maxima() {
        let p = ProblemSpec::new("g", -1.0, 1.0, vec![def("x", 1.0)], def("x+2", 1.0));
        let r = grid_minimize(&p, 4);
        // Points -1, -0.5, 0, 0.5, 1: the constraint x <= 0 fails at the
        // last two, and g(x) = 0 at x = 0 counts as holding.
        assert_eq!(r.constraints.len(), 1);
        assert_eq!(r.constraints[0].violated, 2);
        assert_eq!(r.constraints[0].max_violation, 1.0);
        assert_eq!(r.feasible, 3);
        assert_eq!(r.best, Some(GridBest { x: -1.0, f: 1.0 }));
    }

    #[test]
    fn all_constraints_are_profiled_without_short_circuit() {
        let p = ProblemSpec::new(
            "two",
            0.0,
            1.0,
            vec![def("x-3/4", 1.0), def("1/4-x", 1.0)],
            def("x", 1.0),
        );
        let r = grid_minimize(&p, 4);
        // Even where g1 is already violated, g2 is still profiled.
        assert_eq!(r.constraints[0].violated, 1); // x = 1
        assert_eq!(r.constraints[1].violated, 1); // x = 0
        assert_eq!(r.feasible, 3);
        assert_eq!(r.best, Some(GridBest { x: 0.25, f: 0.25 }));
    }

    #[test]
    fn undefined_points_are_skipped_not_crashed() {
        let p = ProblemSpec::new("partial", -1.0, 1.0, vec![], def("log(x)", 10.0));
        let r = grid_minimize(&p, 4);
        // log fails at -1, -0.5, 0; valid at 0.5 and 1.
        assert_eq!(r.undefined, 3);
        assert_eq!(r.feasible, 2);
        let best = r.best.unwrap();
        assert_eq!(best.x, 0.5);
        assert!((best.f - 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn grid_endpoints_are_exact() {
        // The right endpoint must be b itself, not a + n*h.
        let p = ProblemSpec::new("e", 0.1, 0.30000000000000004, vec![], def("x", 1.0));
        let r = grid_minimize(&p, 3);
        assert_eq!(r.best.unwrap().x, 0.1);
        assert_eq!(r.feasible, 4);
    }

    #[test]
    fn lipschitz_estimate_linear_and_kinked() {
        let two_x = parse("2*x").unwrap();
        let est = estimate_lipschitz(&two_x, -1.0, 1.0, 100).unwrap();
        assert!((est - 2.0).abs() < 1e-12);
        let vee = parse("abs(x)").unwrap();
        let est = estimate_lipschitz(&vee, -1.0, 1.0, 101).unwrap();
        assert!((est - 1.0).abs() < 1e-12);
        let sine = parse("sin(x)").unwrap();
        let est = estimate_lipschitz(&sine, 0.0, 10.0, 10_000).unwrap();
        assert!(est <= 1.0 && est > 0.9999);
    }

    #[test]
    fn lipschitz_estimate_skips_undefined_pairs() {
        let f = parse("log(x)").unwrap();
        // On [-1, 1] only pairs with both points positive count.
        let est = estimate_lipschitz(&f, -1.0, 1.0, 8).unwrap();
        // Valid pairs: (0.25, 0.5), (0.5, 0.75), (0.75, 1.0); steepest is
        // the first: (ln 0.5 - ln 0.25) / 0.25 = 4 ln 2.
        assert!((est - 4.0 * std::f64::consts::LN_2).abs() < 1e-12);
        let nowhere = parse("sqrt(-1-x^2)").unwrap();
        assert_eq!(estimate_lipschitz(&nowhere, 0.0, 1.0, 4), None);
    }
}
