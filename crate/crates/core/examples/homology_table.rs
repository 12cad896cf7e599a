//! Trigraded homology of a bundled diagram: the rational dimension table in
//! (homological, quantum, annular) degrees, the generating polynomial, and
//! the integral structure of each nonzero block.
//!
//! Run with: cargo run -p oddakh --example homology_table

use oddakh::algebra::{poincare_string, ChainComplex};
use oddakh::corpus::load_diagram;

fn main() {
    for stem in ["essential_unknot", "hopf_link", "trefoil_braid"] {
        let d = load_diagram(stem).expect("bundled diagram");
        let cx = ChainComplex::build(&d).expect("complex");
        let dims = cx.homology_dims();

        println!("== {} ==", d.label());
        println!("{:>4} {:>4} {:>4} {:>5}", "i", "j", "k", "dim");
        for (&(i, j, k), &dim) in &dims {
            println!("{i:>4} {j:>4} {k:>4} {dim:>5}");
        }
        println!("poincare: {}", poincare_string(&dims));

        // Integral structure over the annular-degree-preserving part.
        for &key in dims.keys() {
            let (free, torsion) = cx.integral_homology(key);
            if torsion.is_empty() {
                println!("  integral at {key:?}: Z^{free}");
            } else {
                let t: Vec<String> = torsion.iter().map(|d| format!("Z/{d}")).collect();
                println!("  integral at {key:?}: Z^{free} + {}", t.join(" + "));
            }
        }
        println!();
    }
}
