//! The expression language: parsing, evaluation, and error reporting.
//!
//! Expressions are what problem files are made of. The grammar has the
//! usual precedence (power over product over sum), a right-associative
//! `^`, one variable `x`, the constants `pi` and `e`, and a small set of
//! functions. There is no implicit multiplication: `2x` is an error.

use indexbound::expr::parse;

fn main() {
    // Parse once, evaluate many times.
    let f = parse("exp(-cos(4*x-3))+(4*x-3)^2/250-1").unwrap();
    for x in [-1.0, 0.0, 0.75, 2.0] {
        println!("f({x}) = {}", f.eval(x).unwrap());
    }
    println!();

    // The parser reports byte offsets.
    for bad in ["2x", "sin()", "1+*2", "min(x)"] {
        let err = parse(bad).unwrap_err();
        println!("{bad:?}: {err}");
    }
    println!();

    // Evaluation failures carry the failing operation; a solver turns
    // them into a report naming the function and the point.
    let g = parse("log(x)").unwrap();
    println!("log at -1: {}", g.eval(-1.0).unwrap_err());
    let h = parse("1/(x-1)").unwrap();
    println!("pole at 1: {}", h.eval(1.0).unwrap_err());
    println!();

    // Parsed trees print back in canonical form with minimal parentheses.
    let round_trip = parse("((x)+(2*(x^2)))").unwrap();
    println!("((x)+(2*(x^2))) prints as {round_trip}");
}
