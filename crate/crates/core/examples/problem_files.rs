//! Read and write the plain-text problem format.
//!
//! A problem file lists a name, a domain, ordered constraints with their
//! Lipschitz bounds, and an objective. This example parses a file from a
//! string, re-emits it canonically, loads one of the shipped files, and
//! shows what an error with a location looks like.

use indexbound::problem_file;
use std::path::Path;

fn main() {
    let text = "\
# Comments and blank lines are ignored.
name tilted valley

domain -1 2
constraint sin(3*x)+1/2 | K=3.5
objective (x-1)^2/2+x/10 | K=2
reference 0.9 1/200
";
    // The reference line is malformed on purpose: "1/200" is an
    // expression, but numeric fields take plain numbers only.
    match problem_file::from_text(text) {
        Ok(_) => unreachable!("the reference line is not a number"),
        Err(e) => println!("rejected as expected: {e}"),
    }

    let fixed = text.replace("1/200", "0.005");
    let spec = problem_file::from_text(&fixed).expect("now well formed");
    println!();
    println!(
        "parsed {:?} with {} constraint(s); canonical form:",
        spec.name,
        spec.m()
    );
    println!();
    print!("{}", problem_file::to_text(&spec));

    // The problems/ directory at the repository root ships ready-made
    // files for the command line.
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems/two-pockets.problem");
    let spec = problem_file::from_text(&std::fs::read_to_string(shipped).unwrap()).unwrap();
    println!();
    println!(
        "shipped problem {:?}: domain [{}, {}], {} constraints",
        spec.name,
        spec.a,
        spec.b,
        spec.m()
    );
}
