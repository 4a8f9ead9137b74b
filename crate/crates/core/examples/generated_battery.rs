//! Stress the solver on the generated problem battery.
//!
//! The battery is a fixed set of ten seeded random problems whose
//! Lipschitz bounds hold by construction. For each one this example runs
//! the index solver, checks the answer against a brute-force grid scan,
//! and prints both so the agreement is visible. The same battery backs
//! the stress suites in the tests.

use indexbound::battery::standard_battery;
use indexbound::ibba::{solve, SolveStatus, SolverConfig};
use indexbound::oracle::grid_minimize;

fn main() {
    println!(
        "{:<12} {:>2} {:>9} {:>14} {:>14} {:>10}",
        "problem", "m", "trials", "solver f", "grid f", "delta"
    );
    for spec in standard_battery() {
        let config = SolverConfig {
            epsilon: 1e-4 * (spec.b - spec.a),
            ..SolverConfig::default()
        };
        let outcome = solve(&spec, &config).expect("battery functions are total");
        assert_eq!(outcome.status, SolveStatus::AccuracyReached);
        let best = outcome.best.expect("battery problems are feasible");

        let scan = grid_minimize(&spec, 1_000_000);
        let grid_best = scan.best.expect("battery problems are feasible");
        println!(
            "{:<12} {:>2} {:>9} {:>14.8} {:>14.8} {:>10.2e}",
            spec.name,
            spec.m(),
            outcome.ledger.iterations,
            best.f,
            grid_best.f,
            (best.f - grid_best.f).abs()
        );
    }
}
