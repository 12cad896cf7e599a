//! Annular Reidemeister invariance over the bundled move pairs: each pair of
//! diagrams related by one move must agree in trigraded homology dimensions
//! and in the representation fingerprint. A negative control confirms the
//! comparison can tell genuinely different links apart.
//!
//! Run with: cargo run -p oddakh --example reidemeister_compare

use oddakh::corpus::{compare_diagrams, compare_pair, load_corpus, load_diagram};

fn main() {
    let (_, pairs) = load_corpus().expect("bundled corpus");

    println!("move pairs:");
    for p in &pairs {
        let report = compare_pair(p).expect("comparison");
        let verdict = if report.isomorphic() { "isomorphic" } else { "DISTINCT" };
        println!(
            "  {:<4} {:<22} vs {:<22} {}   ({})",
            p.move_kind.to_string(),
            p.before.label(),
            p.after.label(),
            verdict,
            p.note
        );
        assert!(report.isomorphic(), "move pair must be isomorphic");
    }

    // Negative control: the essential and trivial unknots are genuinely
    // different annular links and must be distinguished.
    let essential = load_diagram("essential_unknot").expect("bundled diagram");
    let trivial = load_diagram("trivial_unknot").expect("bundled diagram");
    let control = compare_diagrams(&essential, &trivial).expect("comparison");
    println!();
    println!(
        "negative control (essential vs trivial unknot): dims equal {}, fingerprints equal {}",
        control.dims_equal(),
        control.fingerprints_equal()
    );
    assert!(!control.isomorphic(), "negative control must be distinct");
    println!("negative control correctly distinct");
}
