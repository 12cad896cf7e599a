//! Command-line front end. `run` is an in-process entry point returning the
//! exit code: 0 success, 1 invariant violation, 2 input error. All output is
//! deterministic byte-for-byte for fixed input and flags.

use crate::algebra::{poincare_string, ChainComplex, Key, Supergrading};
use crate::check::{all_passed, run_suites};
use crate::corpus;
use crate::cube::EdgeKind;
use crate::diagram::AnnularDiagram;
use crate::gl11::{action_on_homology, rep_fingerprint, RepFingerprint, SuperRep};
use crate::matrix::QSparse;
use crate::oracle::{check_rational_bound, odd_d0_mod2_dims, EvenOracle};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Parser)]
#[command(
    name = "oddakh",
    version,
    about = "Odd annular Khovanov homology and its chain-level gl(1|1) action",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient system for homology computations.
    #[arg(long, global = true, value_enum, default_value_t = CoeffArg::Rational)]
    coeff: CoeffArg,
    /// Which supergrading labels the generators.
    #[arg(long, global = true, value_enum, default_value_t = SupergradingArg::Default)]
    supergrading: SupergradingArg,
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Cap the worker thread count (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the resolution cube: circles, classes, and edge maps.
    Resolve { path: String },
    /// Trigraded homology dimensions and the Poincaré polynomial.
    Homology { path: String },
    /// The induced gl(1|1) action on homology and its fingerprint.
    Action { path: String },
    /// GF(2) dimensions from the independent even-complex oracle.
    Oracle { path: String },
    /// Run the full invariant suite on one diagram.
    Check { path: String },
    /// Compare two diagrams as annular invariants.
    Compare { before: String, after: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    Rational,
    Integral,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SupergradingArg {
    Default,
    Kshift,
}

impl SupergradingArg {
    fn mode(self) -> Supergrading {
        match self {
            SupergradingArg::Default => Supergrading::Default,
            SupergradingArg::Kshift => Supergrading::KShift,
        }
    }

    fn label(self) -> &'static str {
        match self {
            SupergradingArg::Default => "default",
            SupergradingArg::Kshift => "kshift",
        }
    }
}

/// Exit statuses in one place.
const OK: i32 = 0;
const INVARIANT: i32 = 1;
const INPUT: i32 = 2;

/// Parse and execute a command line (including argv[0]); append output to
/// `out` and return the exit code.
pub fn run(args: impl IntoIterator<Item = String>, out: &mut String) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; real parse errors are
            // input errors.
            let code = if e.use_stderr() { INPUT } else { OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match cli.parallel {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(p) => p,
                Err(e) => {
                    emit_error(out, cli.json, INPUT, &format!("thread pool: {e}"));
                    return INPUT;
                }
            };
            pool.install(|| execute(&cli, out))
        }
        None => execute(&cli, out),
    }
}

fn emit_error(out: &mut String, json: bool, code: i32, message: &str) {
    if json {
        #[derive(Serialize)]
        struct ErrorRecord<'a> {
            error: &'a str,
            kind: &'a str,
        }
        let kind = if code == INPUT { "input" } else { "invariant" };
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&ErrorRecord { error: message, kind }).unwrap()
        );
    } else {
        let _ = writeln!(out, "error: {message}");
    }
}

/// Read a diagram from a file path, falling back to the bundled corpus when
/// the path names a corpus entry (with or without directory or extension).
fn load_input(path: &str) -> Result<AnnularDiagram, String> {
    let p = std::path::Path::new(path);
    if p.is_file() {
        let text =
            std::fs::read_to_string(p).map_err(|e| format!("{path}: {e}"))?;
        return AnnularDiagram::parse(&text).map_err(|e| format!("{path}: {e}"));
    }
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or(path);
    corpus::load_diagram(stem)
        .map_err(|_| format!("{path}: no such file or bundled diagram"))
}

fn build(d: &AnnularDiagram) -> Result<ChainComplex, String> {
    ChainComplex::build(d).map_err(|e| format!("{}: {e}", d.label()))
}

fn execute(cli: &Cli, out: &mut String) -> i32 {
    let mode = cli.supergrading.mode();
    let result = match &cli.command {
        Command::Resolve { path } => cmd_resolve(path, cli.json, out),
        Command::Homology { path } => cmd_homology(path, cli.coeff, cli.supergrading, cli.json, out),
        Command::Action { path } => cmd_action(path, mode, cli.json, out),
        Command::Oracle { path } => cmd_oracle(path, cli.json, out),
        Command::Check { path } => cmd_check(path, cli.supergrading, cli.json, out),
        Command::Compare { before, after } => cmd_compare(before, after, cli.json, out),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            emit_error(out, cli.json, code, &message);
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn input_err<T>(r: Result<T, String>) -> Result<T, (i32, String)> {
    r.map_err(|e| (INPUT, e))
}

#[derive(Serialize)]
struct BlockRow {
    i: i64,
    j: i64,
    k: i64,
    dim: usize,
}

fn dim_rows(dims: &BTreeMap<Key, usize>) -> Vec<BlockRow> {
    dims.iter().map(|(&(i, j, k), &dim)| BlockRow { i, j, k, dim }).collect()
}

fn cmd_resolve(path: &str, json: bool, out: &mut String) -> CmdResult {
    let d = input_err(load_input(path))?;
    let cx = input_err(build(&d))?;
    let stats = d.stats();

    #[derive(Serialize)]
    struct CircleOut {
        index: usize,
        class: &'static str,
        edges: Vec<u32>,
        winding: i64,
    }
    #[derive(Serialize)]
    struct VertexOut {
        vertex: String,
        circles: Vec<CircleOut>,
    }
    #[derive(Serialize)]
    struct EdgeOut {
        from: String,
        crossing: usize,
        kind: String,
        sign: i8,
    }
    #[derive(Serialize)]
    struct ResolveOut {
        diagram: String,
        crossings: usize,
        positive: usize,
        negative: usize,
        winding_parity: u8,
        vertices: Vec<VertexOut>,
        edges: Vec<EdgeOut>,
    }

    let n = cx.cube.n;
    let vertex_name = |v: u64| format!("{v:0width$b}", width = n.max(1));
    let vertices: Vec<VertexOut> = (0..(1u64 << n))
        .map(|v| VertexOut {
            vertex: vertex_name(v),
            circles: cx.cube.resolutions[v as usize]
                .circles
                .iter()
                .enumerate()
                .map(|(i, c)| CircleOut {
                    index: i,
                    class: if c.is_essential() { "essential" } else { "trivial" },
                    edges: c.edges.iter().map(|&(e, _)| e).collect(),
                    winding: c.net,
                })
                .collect(),
        })
        .collect();
    let edges: Vec<EdgeOut> = cx
        .cube
        .edges
        .iter()
        .enumerate()
        .map(|(ei, e)| EdgeOut {
            from: vertex_name(e.from),
            crossing: e.crossing,
            kind: match e.kind {
                EdgeKind::Merge { src, dst } => {
                    format!("merge ({}, {}) -> {}", src.0, src.1, dst)
                }
                EdgeKind::Split { src, dst_tail, dst_head } => {
                    format!("split {} -> ({}, {})", src, dst_tail, dst_head)
                }
            },
            sign: cx.edge_sign(ei),
        })
        .collect();
    let record = ResolveOut {
        diagram: d.label().to_string(),
        crossings: n,
        positive: stats.n_plus,
        negative: stats.n_minus,
        winding_parity: d.winding_parity(),
        vertices,
        edges,
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        let _ = writeln!(out, "diagram: {}", record.diagram);
        let _ = writeln!(
            out,
            "crossings: {} ({} positive, {} negative), winding parity {}",
            record.crossings, record.positive, record.negative, record.winding_parity
        );
        for v in &record.vertices {
            let _ = writeln!(out, "vertex {}:", v.vertex);
            for c in &v.circles {
                let edge_list: Vec<String> =
                    c.edges.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(
                    out,
                    "  circle {} ({}, winding {:+}): edges [{}]",
                    c.index,
                    c.class,
                    c.winding,
                    edge_list.join(", ")
                );
            }
        }
        for e in &record.edges {
            let _ = writeln!(
                out,
                "edge {} @ crossing {}: {} (sign {:+})",
                e.from, e.crossing, e.kind, e.sign
            );
        }
    }
    Ok(OK)
}

fn cmd_homology(
    path: &str,
    coeff: CoeffArg,
    sg: SupergradingArg,
    json: bool,
    out: &mut String,
) -> CmdResult {
    let d = input_err(load_input(path))?;
    let cx = input_err(build(&d))?;
    match coeff {
        CoeffArg::Rational => {
            let dims = cx.homology_dims();

            #[derive(Serialize)]
            struct HomologyOut {
                diagram: String,
                coeff: &'static str,
                supergrading: &'static str,
                blocks: Vec<BlockRow>,
                poincare: String,
            }
            let record = HomologyOut {
                diagram: d.label().to_string(),
                coeff: "rational",
                supergrading: sg.label(),
                blocks: dim_rows(&dims),
                poincare: poincare_string(&dims),
            };
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                let _ = writeln!(out, "diagram: {}", record.diagram);
                let _ = writeln!(
                    out,
                    "homology of d0 over Q (supergrading: {})",
                    record.supergrading
                );
                let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>5}", "i", "j", "k", "dim");
                for b in &record.blocks {
                    let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>5}", b.i, b.j, b.k, b.dim);
                }
                let _ = writeln!(out, "poincare: {}", record.poincare);
            }
        }
        CoeffArg::Integral => {
            #[derive(Serialize)]
            struct IntegralRow {
                i: i64,
                j: i64,
                k: i64,
                free: usize,
                torsion: Vec<String>,
            }
            #[derive(Serialize)]
            struct IntegralOut {
                diagram: String,
                coeff: &'static str,
                supergrading: &'static str,
                blocks: Vec<IntegralRow>,
            }
            let mut blocks = Vec::new();
            for key in cx.keys() {
                let (free, torsion) = cx.integral_homology(key);
                if free > 0 || !torsion.is_empty() {
                    blocks.push(IntegralRow {
                        i: key.0,
                        j: key.1,
                        k: key.2,
                        free,
                        torsion: torsion.iter().map(|t| t.to_string()).collect(),
                    });
                }
            }
            let record = IntegralOut {
                diagram: d.label().to_string(),
                coeff: "integral",
                supergrading: sg.label(),
                blocks,
            };
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                let _ = writeln!(out, "diagram: {}", record.diagram);
                let _ = writeln!(out, "homology of d0 over Z (supergrading: {})", record.supergrading);
                let _ = writeln!(
                    out,
                    "{:>4} {:>4} {:>4} {:>5}  torsion",
                    "i", "j", "k", "free"
                );
                for b in &record.blocks {
                    let torsion = if b.torsion.is_empty() {
                        "-".to_string()
                    } else {
                        b.torsion.join(", ")
                    };
                    let _ = writeln!(
                        out,
                        "{:>4} {:>4} {:>4} {:>5}  {}",
                        b.i, b.j, b.k, b.free, torsion
                    );
                }
            }
        }
    }
    Ok(OK)
}

#[derive(Serialize)]
struct MatrixEntry {
    row: usize,
    col: usize,
    value: String,
}

fn matrix_entries(m: &QSparse) -> Vec<MatrixEntry> {
    m.iter()
        .map(|(r, c, v)| MatrixEntry { row: r, col: c, value: v.to_string() })
        .collect()
}

#[derive(Serialize)]
struct WeightRow {
    k: i64,
    dim: usize,
    rank_e: usize,
    rank_f: usize,
    rank_ef: usize,
    rank_fe: usize,
}

#[derive(Serialize)]
struct SectorOut {
    i: i64,
    j_minus_k: i64,
    weights: Vec<WeightRow>,
}

fn fingerprint_sectors(fp: &RepFingerprint) -> Vec<SectorOut> {
    fp.sectors
        .iter()
        .map(|(&(i, jk), rows)| SectorOut {
            i,
            j_minus_k: jk,
            weights: rows
                .iter()
                .map(|&(k, dim, re, rf, ref_, rfe)| WeightRow {
                    k,
                    dim,
                    rank_e: re,
                    rank_f: rf,
                    rank_ef: ref_,
                    rank_fe: rfe,
                })
                .collect(),
        })
        .collect()
}

fn write_fingerprint_text(out: &mut String, sectors: &[SectorOut]) {
    for s in sectors {
        let _ = writeln!(out, "sector (i = {}, j - k = {}):", s.i, s.j_minus_k);
        for w in &s.weights {
            let _ = writeln!(
                out,
                "  k {:>3}: dim {}, rank e {}, rank f {}, rank ef {}, rank fe {}",
                w.k, w.dim, w.rank_e, w.rank_f, w.rank_ef, w.rank_fe
            );
        }
    }
}

fn cmd_action(path: &str, mode: Supergrading, json: bool, out: &mut String) -> CmdResult {
    let d = input_err(load_input(path))?;
    let cx = input_err(build(&d))?;
    let rep: SuperRep = action_on_homology(&cx, mode).map_err(|e| (INVARIANT, e))?;
    rep.verify().map_err(|e| (INVARIANT, e))?;
    let fp = rep_fingerprint(&rep);

    #[derive(Serialize)]
    struct BasisRow {
        index: usize,
        i: i64,
        j: i64,
        k: i64,
        parity: u8,
    }
    #[derive(Serialize)]
    struct ActionOut {
        diagram: String,
        m_scalar: i64,
        basis: Vec<BasisRow>,
        e: Vec<MatrixEntry>,
        f: Vec<MatrixEntry>,
        fingerprint: Vec<SectorOut>,
    }
    let record = ActionOut {
        diagram: d.label().to_string(),
        m_scalar: rep.m_scalar,
        basis: rep
            .gradings
            .iter()
            .zip(&rep.superdeg)
            .enumerate()
            .map(|(index, (&(i, j, k), &parity))| BasisRow { index, i, j, k, parity })
            .collect(),
        e: matrix_entries(&rep.e),
        f: matrix_entries(&rep.f),
        fingerprint: fingerprint_sectors(&fp),
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        let _ = writeln!(out, "diagram: {}", record.diagram);
        let _ = writeln!(
            out,
            "homology basis ({} classes), h+ acts by {}, h- by k:",
            record.basis.len(),
            record.m_scalar
        );
        for b in &record.basis {
            let _ = writeln!(
                out,
                "  [{}] (i, j, k) = ({}, {}, {}), parity {}",
                b.index, b.i, b.j, b.k, b.parity
            );
        }
        for (name, entries) in [("e", &record.e), ("f", &record.f)] {
            if entries.is_empty() {
                let _ = writeln!(out, "{name}: 0");
            } else {
                let terms: Vec<String> = entries
                    .iter()
                    .map(|e| format!("[{}] <- {} [{}]", e.row, e.value, e.col))
                    .collect();
                let _ = writeln!(out, "{name}: {}", terms.join(", "));
            }
        }
        write_fingerprint_text(out, &record.fingerprint);
    }
    Ok(OK)
}

fn cmd_oracle(path: &str, json: bool, out: &mut String) -> CmdResult {
    let d = input_err(load_input(path))?;
    let cx = input_err(build(&d))?;
    let oracle = input_err(EvenOracle::build(&d).map_err(|e| e.to_string()))?;
    oracle.check_d0_squared().map_err(|e| (INVARIANT, e))?;
    let even = oracle.homology_dims();
    let odd = odd_d0_mod2_dims(&cx);
    let matches = even == odd;
    check_rational_bound(&cx).map_err(|e| (INVARIANT, e))?;

    #[derive(Serialize)]
    struct OracleOut {
        diagram: String,
        blocks: Vec<BlockRow>,
        matches_odd_mod2: bool,
    }
    let record = OracleOut {
        diagram: d.label().to_string(),
        blocks: dim_rows(&even),
        matches_odd_mod2: matches,
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        let _ = writeln!(out, "diagram: {}", record.diagram);
        let _ = writeln!(out, "even annular homology over GF(2):");
        let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>5}", "i", "j", "k", "dim");
        for b in &record.blocks {
            let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>5}", b.i, b.j, b.k, b.dim);
        }
        let _ = writeln!(out, "matches odd complex mod 2: {}", record.matches_odd_mod2);
    }
    if matches {
        Ok(OK)
    } else {
        Err((INVARIANT, format!("mod-2 oracle mismatch for {}", d.label())))
    }
}

fn cmd_check(path: &str, sg: SupergradingArg, json: bool, out: &mut String) -> CmdResult {
    let d = input_err(load_input(path))?;
    let results = run_suites(&d, sg.mode());
    let passed = all_passed(&results);

    #[derive(Serialize)]
    struct SuiteRow {
        name: String,
        passed: bool,
        detail: String,
    }
    #[derive(Serialize)]
    struct CheckOut {
        diagram: String,
        supergrading: &'static str,
        results: Vec<SuiteRow>,
        passed: bool,
    }
    let record = CheckOut {
        diagram: d.label().to_string(),
        supergrading: sg.label(),
        results: results
            .iter()
            .map(|r| SuiteRow {
                name: r.name.to_string(),
                passed: r.passed,
                detail: r.detail.clone(),
            })
            .collect(),
        passed,
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        let _ = writeln!(out, "diagram: {}", record.diagram);
        for r in &record.results {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.detail
            );
        }
        let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "CHECKS FAILED" });
    }
    if passed {
        Ok(OK)
    } else {
        Ok(INVARIANT)
    }
}

fn cmd_compare(before: &str, after: &str, json: bool, out: &mut String) -> CmdResult {
    let a = input_err(load_input(before))?;
    let b = input_err(load_input(after))?;
    let report = corpus::compare_diagrams(&a, &b).map_err(|e| (INVARIANT, e))?;

    #[derive(Serialize)]
    struct CompareOut {
        before: String,
        after: String,
        dims_before: Vec<BlockRow>,
        dims_after: Vec<BlockRow>,
        dims_equal: bool,
        fingerprints_equal: bool,
        verdict: &'static str,
    }
    let verdict = if report.isomorphic() { "isomorphic" } else { "distinct" };
    let record = CompareOut {
        before: a.label().to_string(),
        after: b.label().to_string(),
        dims_before: dim_rows(&report.dims_before),
        dims_after: dim_rows(&report.dims_after),
        dims_equal: report.dims_equal(),
        fingerprints_equal: report.fingerprints_equal(),
        verdict,
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&record).unwrap());
    } else {
        let _ = writeln!(out, "before: {}", record.before);
        let _ = writeln!(out, "after:  {}", record.after);
        let _ = writeln!(out, "trigraded dimensions equal: {}", record.dims_equal);
        let _ = writeln!(out, "fingerprints equal: {}", record.fingerprints_equal);
        let _ = writeln!(out, "verdict: {verdict}");
    }
    Ok(if report.isomorphic() { OK } else { INVARIANT })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String) {
        let mut out = String::new();
        let argv = std::iter::once("oddakh".to_string())
            .chain(args.iter().map(|s| s.to_string()));
        let code = run(argv, &mut out);
        (code, out)
    }

    #[test]
    fn homology_of_bundled_unknot() {
        let (code, out) = run_cli(&["homology", "essential_unknot"]);
        assert_eq!(code, OK, "{out}");
        assert!(out.contains("   0   -1   -1     1"), "{out}");
        assert!(out.contains("   0    1    1     1"), "{out}");
        assert!(out.contains("poincare:"), "{out}");
    }

    #[test]
    fn check_passes_on_unknot_paths() {
        // Bare stem, corpus-style path, and .toml suffix all resolve.
        for path in ["essential_unknot", "corpus/essential_unknot", "essential_unknot.toml"] {
            let (code, out) = run_cli(&["check", path]);
            assert_eq!(code, OK, "{path}: {out}");
            assert_eq!(out.matches("PASS").count(), 7, "{out}");
            assert!(out.contains("all checks passed"));
        }
    }

    #[test]
    fn compare_kink_pair_is_isomorphic() {
        let (code, out) = run_cli(&["compare", "kink_positive", "essential_unknot"]);
        assert_eq!(code, OK, "{out}");
        assert!(out.contains("verdict: isomorphic"), "{out}");
    }

    #[test]
    fn compare_negative_control_is_distinct() {
        let (code, out) = run_cli(&["compare", "essential_unknot", "trivial_unknot"]);
        assert_eq!(code, INVARIANT, "{out}");
        assert!(out.contains("verdict: distinct"), "{out}");
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let (code, out) = run_cli(&["homology", "no_such_diagram"]);
        assert_eq!(code, INPUT, "{out}");
        assert!(out.contains("error:"), "{out}");
        let (code, out) = run_cli(&["homology", "--json", "no_such_diagram"]);
        assert_eq!(code, INPUT);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "input");
    }

    #[test]
    fn json_output_is_valid_and_deterministic() {
        let (code, first) = run_cli(&["homology", "--json", "hopf_link"]);
        assert_eq!(code, OK);
        let v: serde_json::Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["coeff"], "rational");
        let (_, second) = run_cli(&["homology", "--json", "hopf_link"]);
        assert_eq!(first, second);
    }

    #[test]
    fn resolve_dumps_cube_structure() {
        let (code, out) = run_cli(&["resolve", "hopf_link"]);
        assert_eq!(code, OK);
        assert!(out.contains("merge"), "{out}");
        assert!(out.contains("split"), "{out}");
        assert!(out.contains("essential"), "{out}");
    }

    #[test]
    fn oracle_matches_on_bundled_diagram() {
        let (code, out) = run_cli(&["oracle", "r2_braid_before"]);
        assert_eq!(code, OK, "{out}");
        assert!(out.contains("matches odd complex mod 2: true"), "{out}");
    }

    #[test]
    fn action_prints_matrices_and_fingerprint() {
        let (code, out) = run_cli(&["action", "essential_unknot"]);
        assert_eq!(code, OK, "{out}");
        assert!(out.contains("e:"), "{out}");
        assert!(out.contains("sector"), "{out}");
        // The two homology classes are exchanged by e and f up to sign.
        assert!(out.contains("rank e 1") && out.contains("rank f 1"), "{out}");
    }

    #[test]
    fn flags_are_accepted() {
        let (code, _) = run_cli(&[
            "homology",
            "--coeff",
            "integral",
            "--supergrading",
            "kshift",
            "--parallel",
            "2",
            "trefoil_braid",
        ]);
        assert_eq!(code, OK);
    }

    #[test]
    fn kshift_relabels_but_preserves_matrices() {
        let (_, a) = run_cli(&["action", "--json", "hopf_link"]);
        let (_, b) = run_cli(&["action", "--json", "--supergrading", "kshift", "hopf_link"]);
        let va: serde_json::Value = serde_json::from_str(&a).unwrap();
        let vb: serde_json::Value = serde_json::from_str(&b).unwrap();
        assert_eq!(va["e"], vb["e"]);
        assert_eq!(va["f"], vb["f"]);
    }
}
