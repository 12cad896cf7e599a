//! Independent mod-2 cross-check: the *even* annular Khovanov complex over
//! GF(2), built directly from Khovanov's Frobenius rules (no wedge products,
//! no interior products, no edge signs). Its trigraded homology dimensions
//! must agree with the mod-2 homology of the odd k-preserving differential,
//! and the rational odd dimensions can never exceed the mod-2 ones.
//!
//! This module shares only the resolution cube (circle tracing and edge
//! combinatorics) with the odd construction; every map coefficient is
//! produced by a separate code path.

use crate::algebra::{ChainComplex, Gen, Key};
use crate::cube::{CubeError, EdgeKind, Resolution, ResolutionCube};
use crate::diagram::AnnularDiagram;
use crate::matrix::Gf2Mat;
use std::collections::BTreeMap;

/// The even annular complex over GF(2) of one diagram.
pub struct EvenOracle {
    pub cube: ResolutionCube,
    /// Generators per (i, j, k), vertices ascending then subsets ascending —
    /// a subset records which circles carry v₋.
    pub gens: BTreeMap<Key, Vec<Gen>>,
    locator: BTreeMap<Gen, usize>,
    /// The k-preserving differential out of each block, keyed by its domain.
    d0: BTreeMap<Key, Gf2Mat>,
}

fn k_degree(res: &Resolution, mask: u32) -> i64 {
    res.n_essential as i64 - 2 * (mask >> res.n_trivial).count_ones() as i64
}

/// The even Khovanov rules in the subset encoding. A merge sends v₋ (x) v₋
/// to zero and anything else to the product with the obvious label; a split
/// sends v₊ to the two one-sided v₋ insertions and v₋ to the doubled v₋.
fn even_terms(edge: &crate::cube::CubeEdge, mask: u32) -> Vec<u32> {
    let mut passive = 0u32;
    for &(s, t) in &edge.passive {
        passive |= ((mask >> s) & 1) << t;
    }
    match edge.kind {
        EdgeKind::Merge { src: (u, v), dst } => {
            let (bu, bv) = (mask >> u & 1, mask >> v & 1);
            if bu == 1 && bv == 1 {
                return vec![];
            }
            vec![passive | ((bu | bv) << dst)]
        }
        EdgeKind::Split { src, dst_tail, dst_head } => {
            if mask >> src & 1 == 1 {
                vec![passive | 1 << dst_tail | 1 << dst_head]
            } else {
                vec![passive | 1 << dst_tail, passive | 1 << dst_head]
            }
        }
    }
}

impl EvenOracle {
    pub fn build(d: &AnnularDiagram) -> Result<Self, CubeError> {
        let cube = ResolutionCube::build(d)?;
        let stats = d.stats();
        let (np, nm) = (stats.n_plus as i64, stats.n_minus as i64);
        let n = cube.n;

        let mut gens: BTreeMap<Key, Vec<Gen>> = BTreeMap::new();
        let mut locator: BTreeMap<Gen, usize> = BTreeMap::new();
        let grading = |vertex: u64, mask: u32| -> Key {
            let res = &cube.resolutions[vertex as usize];
            let height = vertex.count_ones() as i64;
            let c = res.len() as i64;
            let ell = mask.count_ones() as i64;
            (height - nm, c - 2 * ell + height + np - 2 * nm, k_degree(res, mask))
        };
        for vertex in 0..(1u64 << n) {
            let c = cube.resolutions[vertex as usize].len();
            for mask in 0..(1u32 << c) {
                let key = grading(vertex, mask);
                let list = gens.entry(key).or_default();
                locator.insert((vertex, mask), list.len());
                list.push((vertex, mask));
            }
        }

        let mut d0: BTreeMap<Key, Gf2Mat> = BTreeMap::new();
        for edge in &cube.edges {
            let res_src = &cube.resolutions[edge.from as usize];
            let res_tgt = &cube.resolutions[edge.to() as usize];
            let c = res_src.len();
            for mask in 0..(1u32 << c) {
                let skey = grading(edge.from, mask);
                let scol = locator[&(edge.from, mask)];
                for t in even_terms(edge, mask) {
                    if k_degree(res_tgt, t) != k_degree(res_src, mask) {
                        continue;
                    }
                    let tkey = grading(edge.to(), t);
                    debug_assert_eq!(tkey, (skey.0 + 1, skey.1, skey.2));
                    let trow = locator[&(edge.to(), t)];
                    let block = d0.entry(skey).or_insert_with(|| {
                        Gf2Mat::zero(
                            gens.get(&tkey).map_or(0, |g| g.len()),
                            gens[&skey].len(),
                        )
                    });
                    // Over GF(2) a repeated contribution cancels.
                    block.set(trow, scol, !block.get(trow, scol));
                }
            }
        }
        Ok(EvenOracle { cube, gens, locator, d0 })
    }

    pub fn d0_from(&self, key: Key) -> Gf2Mat {
        match self.d0.get(&key) {
            Some(m) => m.clone(),
            None => {
                let tkey = (key.0 + 1, key.1, key.2);
                Gf2Mat::zero(
                    self.gens.get(&tkey).map_or(0, |g| g.len()),
                    self.gens.get(&key).map_or(0, |g| g.len()),
                )
            }
        }
    }

    /// Position of a generator within its block.
    pub fn locate(&self, g: Gen) -> usize {
        self.locator[&g]
    }

    /// GF(2) homology dimension of the k-preserving differential at one key.
    pub fn homology_dim(&self, key: Key) -> usize {
        let dim = self.gens.get(&key).map_or(0, |g| g.len());
        let out = self.d0_from(key);
        let inm = self.d0_from((key.0 - 1, key.1, key.2));
        (dim - out.rank()) - inm.rank()
    }

    /// All nonzero GF(2) homology dimensions.
    pub fn homology_dims(&self) -> BTreeMap<Key, usize> {
        let mut dims = BTreeMap::new();
        for &key in self.gens.keys() {
            let d = self.homology_dim(key);
            if d > 0 {
                dims.insert(key, d);
            }
        }
        dims
    }

    /// The square of the assembled differential must vanish blockwise.
    pub fn check_d0_squared(&self) -> Result<(), String> {
        for &key in self.gens.keys() {
            let first = self.d0_from(key);
            let second = self.d0_from((key.0 + 1, key.1, key.2));
            if !second.mul(&first).is_zero() {
                return Err(format!("even oracle: d0^2 is nonzero out of {key:?}"));
            }
        }
        Ok(())
    }
}

/// Mod-2 homology dimensions of the odd k-preserving differential, nonzero
/// blocks only.
pub fn odd_d0_mod2_dims(cx: &ChainComplex) -> BTreeMap<Key, usize> {
    let mut dims = BTreeMap::new();
    for key in cx.keys() {
        let dim = cx.gens_at(key).len();
        let out = cx.d0_from(key).to_gf2();
        let inm = cx.d0_from((key.0 - 1, key.1, key.2)).to_gf2();
        let d = (dim - out.rank()) - inm.rank();
        if d > 0 {
            dims.insert(key, d);
        }
    }
    dims
}

/// The headline cross-check: the independently built even annular complex
/// and the odd complex have identical GF(2) homology in every (i, j, k).
/// Returns the common dimensions on success.
pub fn check_mod2_oracle(
    d: &AnnularDiagram,
    cx: &ChainComplex,
) -> Result<BTreeMap<Key, usize>, String> {
    let oracle = EvenOracle::build(d).map_err(|e| format!("oracle build: {e}"))?;
    oracle.check_d0_squared()?;
    let even = oracle.homology_dims();
    let odd = odd_d0_mod2_dims(cx);
    if even != odd {
        return Err(format!(
            "mod-2 oracle mismatch for {}: even {:?} vs odd {:?}",
            d.label(),
            even,
            odd
        ));
    }
    Ok(even)
}

/// Universal-coefficients sanity: the rational dimension of each block of
/// odd d0-homology is at most its GF(2) dimension.
pub fn check_rational_bound(cx: &ChainComplex) -> Result<(), String> {
    let mod2 = odd_d0_mod2_dims(cx);
    for (key, dim_q) in cx.homology_dims() {
        let dim_2 = mod2.get(&key).copied().unwrap_or(0);
        if dim_q > dim_2 {
            return Err(format!(
                "rational dimension {dim_q} exceeds GF(2) dimension {dim_2} at {key:?}"
            ));
        }
    }
    Ok(())
}
