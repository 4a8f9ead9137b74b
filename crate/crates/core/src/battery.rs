//! Seeded generator of random test problems with bounds that are correct
//! by construction.
//!
//! The hand-written [`crate::fixtures`] cover analyzed corner cases; this
//! module mass-produces problems for stress suites that compare solver
//! output against the grid oracle. Every generated function is a short
//! trigonometric polynomial
//!
//! ```text
//! g(x) = sum_i A_i * sin(w_i * x + p_i) + c
//! ```
//!
//! whose derivative is bounded by `B = sum_i |A_i * w_i|`, so the stored
//! Lipschitz bound `K = 1.25 * B` strictly dominates the true constant no
//! matter what the coefficients are. Objectives additionally carry a
//! `D * abs(x - s)` kink (adding `D` to the slope bound), which keeps them
//! piecewise smooth rather than analytic, and are rescaled so that the
//! objective's `K` is strictly the largest bound of the problem.
//!
//! Each candidate problem is accepted only if a 4096-interval grid scan
//! finds a feasible fraction between 2% and 70% of the domain, so every
//! problem is feasible but meaningfully constrained. Rejected candidates
//! simply advance the generator state, which keeps the whole battery a
//! pure function of the seed.

use crate::oracle::grid_minimize;
use crate::problem::{FunctionDef, ProblemSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Seed of [`standard_battery`].
pub const STANDARD_SEED: u64 = 0x1bba;

/// Number of problems in [`standard_battery`].
pub const STANDARD_COUNT: usize = 10;

/// The fixed battery used by the stress suites: ten problems generated
/// from [`STANDARD_SEED`].
pub fn standard_battery() -> Vec<ProblemSpec> {
    generate(STANDARD_SEED, STANDARD_COUNT)
}

/// Generates `count` problems from the given seed. Identical inputs give
/// identical problems, independently of platform or run.
pub fn generate(seed: u64, count: usize) -> Vec<ProblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| accepted_problem(&mut rng, i + 1))
        .collect()
}

struct TrigTerm {
    amp: f64,
    omega: f64,
    phase: f64,
}

/// Appends `+ piece` or `- piece` depending on the sign of `value`.
fn push_signed(out: &mut String, value: f64, piece: &str) {
    if out.is_empty() {
        if value < 0.0 {
            out.push('-');
        }
    } else if value < 0.0 {
        out.push('-');
    } else {
        out.push('+');
    }
    out.push_str(piece);
}

fn trig_source(terms: &[TrigTerm], kink: Option<(f64, f64)>, offset: f64) -> String {
    let mut out = String::new();
    for t in terms {
        let piece = format!("{}*sin({}*x+{})", t.amp.abs(), t.omega, t.phase);
        push_signed(&mut out, t.amp, &piece);
    }
    if let Some((d, s)) = kink {
        let shift = if s >= 0.0 {
            format!("x-{s}")
        } else {
            format!("x+{}", -s)
        };
        push_signed(&mut out, d, &format!("{}*abs({})", d.abs(), shift));
    }
    push_signed(&mut out, offset, &format!("{}", offset.abs()));
    out
}

fn slope_bound(terms: &[TrigTerm], kink_weight: f64) -> f64 {
    terms.iter().map(|t| (t.amp * t.omega).abs()).sum::<f64>() + kink_weight
}

fn draw_terms(rng: &mut ChaCha8Rng, count: usize) -> Vec<TrigTerm> {
    (0..count)
        .map(|_| {
            let magnitude = rng.gen_range(0.3..1.2);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            TrigTerm {
                amp: sign * magnitude,
                omega: rng.gen_range(0.5..3.0),
                phase: rng.gen_range(0.0..TAU),
            }
        })
        .collect()
}

fn candidate_problem(rng: &mut ChaCha8Rng, number: usize) -> ProblemSpec {
    let a = rng.gen_range(-4.0..0.0);
    let len = rng.gen_range(2.0..5.0);
    let b = a + len;
    let m = rng.gen_range(1..=3usize);

    let mut constraints = Vec::with_capacity(m);
    let mut max_constraint_bound: f64 = 0.0;
    for _ in 0..m {
        let terms = draw_terms(rng, 2);
        let amp_sum: f64 = terms.iter().map(|t| t.amp.abs()).sum();
        // A positive offset shrinks the region where the constraint holds;
        // this window keeps single constraints satisfiable but binding, and
        // the acceptance scan below judges the combined chain.
        let offset = rng.gen_range(-0.2 * amp_sum..0.6 * amp_sum);
        let bound = slope_bound(&terms, 0.0);
        max_constraint_bound = max_constraint_bound.max(bound);
        let src = trig_source(&terms, None, offset);
        constraints.push(FunctionDef::new(
            crate::expr::parse(&src).expect("generated source always parses"),
            1.25 * bound,
        ));
    }

    let mut terms = draw_terms(rng, 3);
    let mut kink_weight = rng.gen_range(0.4..1.5);
    let kink_at = rng.gen_range(a + 0.1 * len..b - 0.1 * len);
    let offset = rng.gen_range(-0.5..0.5);
    let raw_bound = slope_bound(&terms, kink_weight);
    if raw_bound <= max_constraint_bound {
        // Scale the objective up until its bound clears every constraint's;
        // stress suites rely on the objective's K being the problem's
        // largest.
        let scale = 1.1 * max_constraint_bound / raw_bound;
        for t in &mut terms {
            t.amp *= scale;
        }
        kink_weight *= scale;
    }
    let bound = slope_bound(&terms, kink_weight);
    let src = trig_source(&terms, Some((kink_weight, kink_at)), offset);
    let objective = FunctionDef::new(
        crate::expr::parse(&src).expect("generated source always parses"),
        1.25 * bound,
    );

    ProblemSpec::new(format!("battery-{number:02}"), a, b, constraints, objective)
}

fn accepted_problem(rng: &mut ChaCha8Rng, number: usize) -> ProblemSpec {
    for _ in 0..500 {
        let candidate = candidate_problem(rng, number);
        let scan = grid_minimize(&candidate, 4096);
        let fraction = scan.feasible_fraction();
        if scan.best.is_some() && (0.02..=0.7).contains(&fraction) {
            return candidate;
        }
    }
    panic!("no acceptable candidate for battery problem {number} after 500 draws");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::estimate_lipschitz;

    #[test]
    fn standard_battery_is_deterministic() {
        let first = standard_battery();
        let second = standard_battery();
        assert_eq!(first, second);
        assert_eq!(first.len(), STANDARD_COUNT);
    }

    #[test]
    fn a_different_seed_changes_the_problems() {
        assert_ne!(generate(1, 3), generate(2, 3));
    }

    #[test]
    fn problems_validate_and_are_meaningfully_constrained() {
        for spec in standard_battery() {
            spec.validate().unwrap();
            assert!(
                (1..=3).contains(&spec.m()),
                "{}: m = {}",
                spec.name,
                spec.m()
            );
            let scan = grid_minimize(&spec, 4096);
            let fraction = scan.feasible_fraction();
            assert!(scan.best.is_some(), "{} has no feasible point", spec.name);
            assert!(
                (0.02..=0.7).contains(&fraction),
                "{}: feasible fraction {fraction}",
                spec.name
            );
        }
    }

    #[test]
    fn bounds_strictly_dominate_measured_slopes() {
        for spec in standard_battery() {
            for j in 1..=spec.m() + 1 {
                let def = spec.function(j);
                let measured = estimate_lipschitz(&def.expr, spec.a, spec.b, 200_000)
                    .expect("battery functions are total");
                assert!(
                    def.k > measured,
                    "{} function {j}: bound {} vs measured {measured}",
                    spec.name,
                    def.k
                );
            }
        }
    }

    #[test]
    fn objective_bound_is_strictly_the_largest() {
        for spec in standard_battery() {
            for c in &spec.constraints {
                assert!(
                    spec.objective.k > c.k,
                    "{}: objective K {} vs constraint K {}",
                    spec.name,
                    spec.objective.k,
                    c.k
                );
            }
        }
    }
}
