//! Check a solver run against brute force.
//!
//! The oracle module never reuses solver logic: it walks a dense uniform
//! grid, evaluating every constraint at every point. That makes it slow
//! and trustworthy, which is exactly what a cross-check needs. This
//! example also measures empirical Lipschitz constants to show how much
//! slack the fixture's declared bounds carry.

use indexbound::fixtures;
use indexbound::ibba::{solve, SolverConfig};
use indexbound::oracle::{estimate_lipschitz, grid_minimize};

fn main() {
    let spec = fixtures::two_pockets();

    let scan = grid_minimize(&spec, 1_000_000);
    let best = scan.best.expect("problem is feasible");
    println!("grid scan over {} points:", scan.n + 1);
    println!("  feasible fraction  {:.4}", scan.feasible_fraction());
    println!("  best point         {:.8} -> {:.8}", best.x, best.f);
    for (i, p) in scan.constraints.iter().enumerate() {
        println!(
            "  g{} violated at {} points (worst excess {:.3})",
            i + 1,
            p.violated,
            p.max_violation
        );
    }

    let outcome = solve(&spec, &SolverConfig::default()).expect("runs to completion");
    let solver_best = outcome.best.expect("feasible problem");
    println!();
    println!("solver agrees:");
    println!(
        "  best point         {:.8} -> {:.8}",
        solver_best.x, solver_best.f
    );
    println!(
        "  difference in f    {:.2e}",
        (solver_best.f - best.f).abs()
    );

    println!();
    println!("declared bounds vs measured slopes:");
    for j in 1..=spec.m() + 1 {
        let def = spec.function(j);
        let measured = estimate_lipschitz(&def.expr, spec.a, spec.b, 200_000)
            .expect("functions are total on the domain");
        println!("  K{j} = {:<4}  measured L ~ {measured:.4}", def.k);
    }
}
