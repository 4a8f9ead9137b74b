//! Property-based checks over randomly generated inputs: expression
//! serialization round-trips, evaluation-ledger accounting, the mirror
//! symmetry of the two one-sided characteristics, and the cone envelope
//! against a brute-force evaluation.

use indexbound::expr::{parse, BinaryOp, Expr, Function, NamedConst};
use indexbound::problem::EvaluationLedger;
use indexbound::support::{falling_characteristic, rising_characteristic, Apex, Envelope};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Leaves use nonnegative numbers; signs enter only through explicit
/// negation nodes, matching what the parser builds for a leading minus.
fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..1000, 1u32..1000).prop_map(|(n, d)| Expr::number(n as f64 / d as f64)),
        (0u32..100_000).prop_map(|n| Expr::number(n as f64)),
        Just(Expr::var()),
        Just(Expr::Const(NamedConst::Pi)),
        Just(Expr::Const(NamedConst::E)),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 48, 3, |inner| {
        let unary = prop_oneof![
            Just(Function::Sin),
            Just(Function::Cos),
            Just(Function::Tan),
            Just(Function::Exp),
            Just(Function::Log),
            Just(Function::Abs),
            Just(Function::Sqrt),
        ];
        let binop = prop_oneof![
            Just(BinaryOp::Add),
            Just(BinaryOp::Sub),
            Just(BinaryOp::Mul),
            Just(BinaryOp::Div),
            Just(BinaryOp::Pow),
        ];
        let pair = prop_oneof![Just(Function::Min), Just(Function::Max)];
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (binop, inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            (unary, inner.clone()).prop_map(|(f, a)| Expr::call(f, vec![a])),
            (pair, inner.clone(), inner.clone()).prop_map(|(f, l, r)| Expr::call(f, vec![l, r])),
        ]
    })
}

/// Ok values must match bit for bit, errors must be the same error.
fn assert_same_eval(a: &Expr, b: &Expr, x: f64) -> Result<(), TestCaseError> {
    match (a.eval(x), b.eval(x)) {
        (Ok(u), Ok(v)) => prop_assert_eq!(u.to_bits(), v.to_bits(), "values differ at x = {}", x),
        (Err(u), Err(v)) => prop_assert_eq!(u, v, "errors differ at x = {}", x),
        (u, v) => prop_assert!(false, "outcomes differ at x = {}: {:?} vs {:?}", x, u, v),
    }
    Ok(())
}

proptest! {
    /// Parsing the canonical text of any tree reproduces the tree, and
    /// with it the exact evaluation behavior everywhere.
    #[test]
    fn expression_serialization_round_trips(expr in tree()) {
        let text = expr.serialize();
        let reparsed = parse(&text)
            .map_err(|e| TestCaseError::fail(format!("canonical text failed to parse: {e} in {text:?}")))?;
        prop_assert_eq!(&reparsed, &expr, "tree changed through {:?}", text);

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..256 {
            let x = rng.gen_range(-10.0..10.0);
            assert_same_eval(&expr, &reparsed, x)?;
        }
    }

    /// Replaying any sequence of trial indices through the ledger, the
    /// weighted total equals the sum of per-trial costs: a trial whose
    /// index came out as j evaluated exactly j expressions.
    #[test]
    fn ledger_weighted_total_matches_per_trial_costs(
        m in 1usize..=3,
        seq in proptest::collection::vec(0usize..4, 0..600),
    ) {
        let mut ledger = EvaluationLedger::new(m);
        let mut expected = 0u64;
        let mut per_index = vec![0u64; m + 1];
        for raw in seq {
            let index = 1 + raw % (m + 1);
            ledger.record_trial(index);
            expected += index as u64;
            per_index[index - 1] += 1;
        }
        prop_assert_eq!(ledger.weighted(), expected);
        prop_assert_eq!(&ledger.counts[..], &per_index[..m]);
        prop_assert_eq!(ledger.n_f, per_index[m]);
        prop_assert_eq!(ledger.iterations, per_index.iter().sum::<u64>());
    }

    /// The two one-sided characteristics are exact mirror images: swapping
    /// the endpoints swaps the formulas bit for bit.
    #[test]
    fn falling_mirrors_rising_bitwise(
        z_l in -100.0f64..100.0,
        z_r in -100.0f64..100.0,
        k_l in 0.1f64..50.0,
        k_r in 0.1f64..50.0,
        len in 1e-6f64..100.0,
    ) {
        let fall = falling_characteristic(z_l, z_r, k_l, k_r, len);
        let rise = rising_characteristic(z_r, z_l, k_r, k_l, len);
        prop_assert_eq!(fall.to_bits(), rise.to_bits());
    }

    /// The prefix/suffix envelope equals the naive maximum over all cones
    /// at arbitrary query points, and its segment minimum brackets a dense
    /// scan of the same segments.
    #[test]
    fn envelope_matches_naive_cone_maximum(
        k in 0.5f64..20.0,
        apexes in proptest::collection::vec((-10.0f64..10.0, -5.0f64..5.0), 1..12),
        queries in proptest::collection::vec(-12.0f64..12.0, 8),
        span in (-10.0f64..9.0, 0.1f64..3.0),
    ) {
        let cones: Vec<Apex> = apexes
            .iter()
            .map(|&(x, value)| Apex { x, value })
            .collect();
        let envelope = Envelope::new(k, cones.clone());
        for &x in &queries {
            let naive = cones
                .iter()
                .map(|a| a.value - k * (x - a.x).abs())
                .fold(f64::NEG_INFINITY, f64::max);
            let got = envelope.value(x);
            prop_assert!(
                (got - naive).abs() <= 1e-12 * (1.0 + naive.abs()),
                "envelope {} vs naive {} at x = {}",
                got,
                naive,
                x
            );
        }

        let (lo, width) = span;
        let hi = lo + width;
        let exact = envelope.min_over(&[(lo, hi)]).unwrap();
        let steps = 10_000;
        let h = width / steps as f64;
        let mut scanned = f64::INFINITY;
        for i in 0..=steps {
            let x = if i == steps { hi } else { lo + h * i as f64 };
            scanned = scanned.min(envelope.value(x));
        }
        // The scan can only miss the true minimum by one grid step of slope.
        prop_assert!(exact <= scanned + 1e-9, "exact {} above scan {}", exact, scanned);
        prop_assert!(exact >= scanned - k * h - 1e-9, "exact {} too far below scan {}", exact, scanned);
    }
}
