//! Run both methods on a few problems and print the comparison table.
//!
//! Each row shows iteration and weighted-evaluation totals side by side;
//! the speedup columns are the penalty method's cost divided by the index
//! method's, so values above 1 favor the index method. The average row
//! covers the problems both methods solved.

use indexbound::fixtures;
use indexbound::ibba::{solve, SolverConfig};
use indexbound::pen::{tune_penalty, PenaltyConfig};
use indexbound::report::{ComparisonRow, ComparisonTable, RunReport};

fn main() {
    let problems = [
        fixtures::two_pockets(),
        fixtures::kink(),
        fixtures::two_sines(),
        fixtures::boundary_pocket(),
    ];

    let mut rows = Vec::new();
    for spec in &problems {
        let epsilon = 1e-4 * (spec.b - spec.a);
        let ibba_config = SolverConfig {
            epsilon,
            ..SolverConfig::default()
        };
        let pen_config = PenaltyConfig {
            epsilon,
            ..PenaltyConfig::default()
        };
        let ibba = solve(spec, &ibba_config)
            .map(|o| RunReport::from_ibba(spec, &o))
            .map_err(|e| e.to_string());
        let pen = tune_penalty(spec, &pen_config)
            .map(|o| RunReport::from_pen(spec, &o))
            .map_err(|e| e.to_string());
        rows.push(ComparisonRow::new(
            &spec.name,
            pen.as_ref().map_err(String::as_str),
            ibba.as_ref().map_err(String::as_str),
        ));
    }

    print!("{}", ComparisonTable::new(rows).render());
}
