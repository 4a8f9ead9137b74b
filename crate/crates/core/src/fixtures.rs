//! Ready-made problems used across tests, examples, and the bundled
//! problem files.
//!
//! Reference solutions were computed independently with high-precision
//! arithmetic (30-digit scans plus stationary-point refinement) and every
//! Lipschitz bound strictly dominates the constant measured by
//! [`crate::oracle::estimate_lipschitz`] on a dense grid; tests pin both
//! facts.

use crate::expr::parse;
use crate::problem::{FunctionDef, ProblemSpec, Reference};

fn def(src: &str, k: f64) -> FunctionDef {
    FunctionDef::new(parse(src).expect("fixture expression"), k)
}

fn with_reference(mut spec: ProblemSpec, x: f64, f: f64) -> ProblemSpec {
    spec.reference = Some(Reference { x, f: Some(f) });
    spec
}

/// Two-constraint showcase problem: a trigonometric chain whose feasible
/// set splits into two disjoint pockets ([-2.027, -1.915] and
/// [-1.226, -0.648]) covering about 14% of the domain, with the
/// constrained minimum strictly inside the right pocket. True Lipschitz
/// constants are about 5.36, 8.33, and 6.31.
pub fn two_pockets() -> ProblemSpec {
    with_reference(
        ProblemSpec::new(
            "two pockets",
            -3.0,
            2.0,
            vec![
                def("sin(x)^3*exp(-sin(3*x))+1/2", 7.0),
                def("cos(7/5*(x+3))-sin(7*(x+3))+3/10", 10.0),
            ],
            def("exp(-cos(4*x-3))+(4*x-3)^2/250-1", 8.0),
        ),
        -0.7875562015923828,
        -0.4775581368907271,
    )
}

/// A constraint that is violated everywhere: infeasibility is certified
/// after the two endpoint trials.
pub fn never_feasible() -> ProblemSpec {
    ProblemSpec::new(
        "never feasible",
        0.0,
        1.0,
        vec![def("1", 1.0)],
        def("x", 1.5),
    )
}

/// Two linear constraints that pull in opposite directions (x <= 0.4 and
/// x >= 0.6): jointly infeasible, certified after five trials.
pub fn split_gap() -> ProblemSpec {
    ProblemSpec::new(
        "split gap",
        0.0,
        1.0,
        vec![def("x-2/5", 1.5), def("3/5-x", 1.5)],
        def("x", 1.5),
    )
}

/// Penalty-tuning exercise: a deep infeasible valley at 0.25 against a
/// shallow feasible one at 0.75 (feasible set x >= 0.5625). A penalty
/// coefficient of 15 still prefers the deep valley; 20 flips the
/// preference, so the standard schedule needs exactly two rounds.
pub fn penalty_flip() -> ProblemSpec {
    with_reference(
        ProblemSpec::new(
            "penalty flip",
            0.0,
            1.0,
            vec![def("9/10-8/5*x", 2.0)],
            def("-10*exp(-50*(x-1/4)^2)-exp(-50*(x-3/4)^2)", 80.0),
        ),
        0.7499813500462259,
        -1.0000372839071958,
    )
}

/// Unconstrained, non-differentiable at the minimum.
pub fn kink() -> ProblemSpec {
    with_reference(
        ProblemSpec::new("kink", 0.0, 1.0, vec![], def("abs(x-3/10)", 1.5)),
        0.3,
        0.0,
    )
}

/// Unconstrained standard test function with several local minima.
pub fn two_sines() -> ProblemSpec {
    with_reference(
        ProblemSpec::new(
            "two sines",
            2.7,
            7.5,
            vec![],
            def("sin(x)+sin(10*x/3)", 6.0),
        ),
        5.145735290256128,
        -1.8995993491521134,
    )
}

/// Unconstrained variant of the first pocket constraint, a sharply
/// multiextremal trigonometric chain. The domain stops at -1 because the
/// function is mirror-symmetric about -pi/2, which would tie two global
/// minimizers exactly.
pub fn trig_cube() -> ProblemSpec {
    with_reference(
        ProblemSpec::new(
            "trig cube",
            -3.0,
            -1.0,
            vec![],
            def("sin(x)^3*exp(-sin(3*x))+1/2", 7.0),
        ),
        -2.2772174402714815,
        -0.2414044694421932,
    )
}

/// One oscillating constraint whose feasible set is [pi/3, 2]; the
/// parabolic objective puts the constrained minimum exactly on the
/// feasible boundary, the classic hard case for penalties.
pub fn boundary_pocket() -> ProblemSpec {
    with_reference(
        ProblemSpec::new(
            "boundary pocket",
            0.0,
            2.0,
            vec![def("sin(3*x)", 3.5)],
            def("(x-1)^2-1/2", 2.5),
        ),
        std::f64::consts::FRAC_PI_3,
        -0.49777239116104453,
    )
}

/// A partially defined second constraint (log of -x) guarded by the
/// first one: evaluation order keeps the solver away from the undefined
/// half of the domain. Feasible set [-exp(-1/2), -1/2], minimum on the
/// right edge.
pub fn guarded_log() -> ProblemSpec {
    let mut g2 = def("log(-x)+1/2", 3.0);
    g2.partial = true;
    with_reference(
        ProblemSpec::new(
            "guarded log",
            -2.0,
            1.0,
            vec![def("x+1/2", 2.0), g2],
            def("sin(5*x)", 6.0),
        ),
        -0.5,
        -0.5984721441039564,
    )
}

/// Every fixture, in a stable order.
pub fn all() -> Vec<ProblemSpec> {
    vec![
        two_pockets(),
        never_feasible(),
        split_gap(),
        penalty_flip(),
        kink(),
        two_sines(),
        trig_cube(),
        boundary_pocket(),
        guarded_log(),
    ]
}
