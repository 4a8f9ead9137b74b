//! Record a solver run and render it as an SVG diagram.
//!
//! The picture shows the objective curve with the feasible subregions in
//! bold, and one row of `+` marks per constraint level under the axis:
//! row `g1` holds the trials where the first constraint failed, row `g2`
//! those that got one function further, and row `f` the feasible trials.
//! The marks crowd together around the minimizer as the run closes in.

use indexbound::fixtures;
use indexbound::ibba::{solve, SolverConfig};
use indexbound::svg;

fn main() {
    let spec = fixtures::two_pockets();
    let config = SolverConfig {
        epsilon: 1e-4 * (spec.b - spec.a),
        emit_trace: true,
        ..SolverConfig::default()
    };
    let outcome = solve(&spec, &config).expect("runs to completion");
    let trace = outcome.trace.as_ref().expect("trace was requested");

    let diagram = svg::render(&spec, trace).expect("trace matches the problem");
    let path = std::env::temp_dir().join("two-pockets.svg");
    std::fs::write(&path, &diagram).expect("temp dir is writable");

    println!("wrote {}", path.display());
    println!("trials drawn: {}", trace.records.len());
    for (i, n) in outcome.ledger.counts.iter().enumerate() {
        println!("  row g{}: {n} marks", i + 1);
    }
    println!("  row f:  {} marks", outcome.ledger.n_f);
}
