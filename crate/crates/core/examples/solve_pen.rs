//! Solve a problem with the penalty baseline and watch the coefficient
//! tuning at work.
//!
//! On this fixture the first penalty coefficient is too weak: the
//! penalized minimum sits at an infeasible point, so the method restarts
//! with a stiffer coefficient and only then lands inside the feasible
//! set. The final report charges every trial of every round.

use indexbound::fixtures;
use indexbound::pen::{tune_penalty, PenaltyConfig};
use indexbound::report::RunReport;

fn main() {
    let spec = fixtures::penalty_flip();
    let outcome = tune_penalty(&spec, &PenaltyConfig::default()).expect("total functions");

    println!(
        "tuning took {} round(s), final coefficient {}",
        outcome.rounds, outcome.pstar
    );
    println!();
    print!("{}", RunReport::from_pen(&spec, &outcome).render());
}
