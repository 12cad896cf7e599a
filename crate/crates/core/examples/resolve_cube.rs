//! Walk the cube of resolutions of a bundled diagram: every vertex with its
//! circles (trivial vs. essential), and every edge with its merge/split type
//! and chosen sign.
//!
//! Run with: cargo run -p oddakh --example resolve_cube

use oddakh::algebra::ChainComplex;
use oddakh::corpus::load_diagram;
use oddakh::cube::EdgeKind;

fn main() {
    let d = load_diagram("hopf_link").expect("bundled diagram");
    let stats = d.stats();
    println!("diagram: {}", d.label());
    println!(
        "crossings: {} positive, {} negative; components: {}; winding parity: {}",
        stats.n_plus,
        stats.n_minus,
        stats.num_components,
        d.winding_parity()
    );
    println!();

    let cx = ChainComplex::build(&d).expect("complex");
    let cube = &cx.cube;

    println!("vertices ({} total):", cube.resolutions.len());
    for (v, res) in cube.resolutions.iter().enumerate() {
        let kinds: Vec<String> = res
            .circles
            .iter()
            .map(|c| if c.is_essential() { format!("essential(net {})", c.net) } else { "trivial".into() })
            .collect();
        println!("  {:0width$b}: {} circle(s) [{}]", v, res.len(), kinds.join(", "), width = cube.n);
    }

    println!();
    println!("edges ({} total):", cube.edges.len());
    for (idx, e) in cube.edges.iter().enumerate() {
        let kind = match e.kind {
            EdgeKind::Merge { src, dst } => {
                format!("merge circles {:?} -> {}", src, dst)
            }
            EdgeKind::Split { src, dst_tail, dst_head } => {
                format!("split circle {} -> (tail {}, head {})", src, dst_tail, dst_head)
            }
        };
        println!(
            "  {:0width$b} --crossing {}--> {:0width$b}  {}  sign {:+}",
            e.from,
            e.crossing,
            e.to(),
            kind,
            cx.edge_sign(idx),
            width = cube.n
        );
    }
}
