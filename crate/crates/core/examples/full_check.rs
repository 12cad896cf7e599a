//! Run the complete verification suite on one diagram: differential
//! identities, superalgebra relations at every vertex, the exterior/tensor
//! equivalence, edge conjugation identities, the commuting action, the GF(2)
//! cross-check, and the homology action. Exits nonzero on any failure.
//!
//! Run with: cargo run -p oddakh --example full_check [stem]

use oddakh::algebra::Supergrading;
use oddakh::check::{all_passed, run_suites};
use oddakh::corpus::load_diagram;

fn main() {
    let stem = std::env::args().nth(1).unwrap_or_else(|| "r3_before".into());
    let d = load_diagram(&stem).expect("bundled diagram");
    println!("checking {}", d.label());

    let results = run_suites(&d, Supergrading::Default);
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("  {status}  {:<24} {}", r.name, r.detail);
    }

    if all_passed(&results) {
        println!("all checks passed");
    } else {
        println!("checks FAILED");
        std::process::exit(1);
    }
}
