//! The full invariant suite for one diagram: every identity the theory
//! promises, run as exact arithmetic checks and reported suite by suite.
//! Shared by the `check` command and the acceptance tests.

use crate::algebra::{ChainComplex, Supergrading};
use crate::diagram::AnnularDiagram;
use crate::gl11::{
    action_on_homology, check_alpha_intertwines, check_d0_edge, check_edge_conjugation,
    check_k_parts, rep_fingerprint, vertex_action, ActionStyle,
};
use crate::oracle::{check_mod2_oracle, check_rational_bound};
use rayon::prelude::*;

/// One named check with its outcome.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn from(name: &'static str, r: Result<String, String>) -> Self {
        match r {
            Ok(detail) => SuiteResult { name, passed: true, detail },
            Err(detail) => SuiteResult { name, passed: false, detail },
        }
    }
}

pub fn all_passed(results: &[SuiteResult]) -> bool {
    results.iter().all(|r| r.passed)
}

/// Collapse a parallel iterator of unit checks into a count or first error.
fn collect_par<I>(iter: I, what: &str) -> Result<String, String>
where
    I: IndexedParallelIterator<Item = Result<(), String>>,
{
    let total = iter.len();
    iter.reduce(|| Ok(()), |a, b| a.and(b))?;
    Ok(format!("{total} {what} checked"))
}

/// d² = 0, d₀² = 0, d₋² = 0, and d₀d₋ + d₋d₀ = 0, blockwise and exactly.
pub fn differential_identities(cx: &ChainComplex) -> Result<String, String> {
    let keys: Vec<_> = cx.keys().collect();
    for &key in &keys {
        let (i, j, k) = key;
        let d0 = cx.d0_from(key);
        let dm = cx.dm_from(key);
        if !cx.d0_from((i + 1, j, k)).mul(&d0).is_zero() {
            return Err(format!("d0^2 is nonzero out of {key:?}"));
        }
        if !cx.dm_from((i + 1, j, k - 2)).mul(&dm).is_zero() {
            return Err(format!("d-^2 is nonzero out of {key:?}"));
        }
        let anti = cx
            .dm_from((i + 1, j, k))
            .mul(&d0)
            .add(&cx.d0_from((i + 1, j, k - 2)).mul(&dm));
        if !anti.is_zero() {
            return Err(format!("d0 d- + d- d0 is nonzero out of {key:?}"));
        }
    }
    let mut slices: Vec<(i64, i64)> = keys.iter().map(|k| (k.0, k.1)).collect();
    slices.dedup();
    slices.sort_unstable();
    slices.dedup();
    for &(i, j) in &slices {
        if !cx.full_block(i + 1, j).mul(&cx.full_block(i, j)).is_zero() {
            return Err(format!("d^2 is nonzero out of bidegree ({i}, {j})"));
        }
    }
    Ok(format!("{} trigraded blocks checked", keys.len()))
}

/// Every cube vertex yields a representation satisfying the full bracket
/// table, in both the exterior and the tensor description.
pub fn vertex_relations(cx: &ChainComplex, mode: Supergrading) -> Result<String, String> {
    let n_vertices = 1usize << cx.cube.n;
    collect_par(
        (0..n_vertices).into_par_iter().map(|v| {
            for style in [ActionStyle::Exterior, ActionStyle::Tensor] {
                vertex_action(cx, v as u64, style, mode).verify()?;
            }
            Ok(())
        }),
        "vertex representations",
    )
}

/// The basis-preserving map intertwines the exterior and tensor actions at
/// every vertex.
pub fn alpha_intertwining(cx: &ChainComplex, mode: Supergrading) -> Result<String, String> {
    let n_vertices = 1usize << cx.cube.n;
    collect_par(
        (0..n_vertices)
            .into_par_iter()
            .map(|v| check_alpha_intertwines(cx, v as u64, mode)),
        "vertices",
    )
}

/// Every edge map is conjugate to id (x) m (x) id or id (x) Delta (x) id,
/// and its k-degree split matches the circle-class case table.
pub fn edge_conjugations(cx: &ChainComplex) -> Result<String, String> {
    let n_edges = cx.cube.edges.len();
    collect_par(
        (0..n_edges).into_par_iter().map(|ei| {
            check_edge_conjugation(cx, ei)?;
            check_k_parts(cx, ei)
        }),
        "cube edges",
    )
}

/// The k-preserving differential commutes with e, f, h₊, h₋ on every edge.
pub fn d0_intertwining(cx: &ChainComplex, mode: Supergrading) -> Result<String, String> {
    let n_edges = cx.cube.edges.len();
    collect_par(
        (0..n_edges).into_par_iter().map(|ei| check_d0_edge(cx, ei, mode)),
        "cube edges",
    )
}

/// The independently built even complex over GF(2) has the same trigraded
/// homology as the odd one mod 2, and rational dimensions never exceed it.
pub fn mod2_oracle(d: &AnnularDiagram, cx: &ChainComplex) -> Result<String, String> {
    let dims = check_mod2_oracle(d, cx)?;
    check_rational_bound(cx)?;
    Ok(format!("{} nonzero GF(2) blocks matched", dims.len()))
}

/// The induced action on homology is well defined and satisfies every
/// relation and grading constraint.
pub fn homology_action(cx: &ChainComplex, mode: Supergrading) -> Result<String, String> {
    let rep = action_on_homology(cx, mode)?;
    rep.verify()?;
    let fp = rep_fingerprint(&rep);
    Ok(format!(
        "homology dimension {} across {} sectors",
        rep.dim(),
        fp.sectors.len()
    ))
}

/// Run every suite on one diagram.
pub fn run_suites(d: &AnnularDiagram, mode: Supergrading) -> Vec<SuiteResult> {
    let cx = match ChainComplex::build(d) {
        Ok(cx) => cx,
        Err(e) => {
            return vec![SuiteResult {
                name: "build",
                passed: false,
                detail: e.to_string(),
            }]
        }
    };
    vec![
        SuiteResult::from("differential-identities", differential_identities(&cx)),
        SuiteResult::from("vertex-relations", vertex_relations(&cx, mode)),
        SuiteResult::from("alpha-intertwining", alpha_intertwining(&cx, mode)),
        SuiteResult::from("edge-conjugation", edge_conjugations(&cx)),
        SuiteResult::from("d0-intertwining", d0_intertwining(&cx, mode)),
        SuiteResult::from("mod2-oracle", mod2_oracle(d, &cx)),
        SuiteResult::from("homology-action", homology_action(&cx, mode)),
    ]
}
