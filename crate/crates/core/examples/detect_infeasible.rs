//! Prove that a feasible point does not exist.
//!
//! The index scheme can certify infeasibility: once every remaining
//! subinterval's characteristic is positive, no point can satisfy the
//! whole constraint chain, and the solver stops with a proof rather than
//! a timeout. The objective is never evaluated along the way, which the
//! ledger makes visible.

use indexbound::fixtures;
use indexbound::ibba::{solve, SolveStatus, SolverConfig};

fn main() {
    // One constraint that never holds, and a pair of constraints whose
    // individual regions do not overlap.
    for spec in [fixtures::never_feasible(), fixtures::split_gap()] {
        let outcome = solve(&spec, &SolverConfig::default()).expect("runs to completion");
        assert_eq!(outcome.status, SolveStatus::InfeasibleDetected);
        println!("{}:", spec.name);
        println!(
            "  status      infeasible, proven in {} trials",
            outcome.ledger.iterations
        );
        println!("  g counts    {:?}", outcome.ledger.counts);
        println!("  f count     {} (never evaluated)", outcome.ledger.n_f);
        println!(
            "  total cost  {} weighted evaluations",
            outcome.ledger.weighted()
        );
    }
}
