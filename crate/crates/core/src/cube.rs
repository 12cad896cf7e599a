//! The cube of resolutions of an annular diagram.
//!
//! Each vertex of the cube {0,1}^n is a crossingless configuration of
//! circles: the 0-smoothing of a crossing (a, b, c, d) joins a--b and c--d,
//! the 1-smoothing joins a--d and b--c. Circles are classified by their net
//! intersection with gamma: 0 is trivial, +-1 essential (anything else fails
//! validation, since an embedded circle winds around the puncture at most
//! once).
//!
//! Circles are listed in a canonical order: trivial circles first, in the
//! order tracing discovers them (seeded by ascending edge id), then essential
//! circles ordered by the first gamma intersection lying on them. Cube edges
//! store which circles merge or split; at a split, the arrow decoration of
//! the crossing distinguishes the ordered pair (tail, head) of result
//! circles: with the crossing drawn in its defining frame and the arrow
//! rotated a quarter turn clockwise, the arrow points from the tail circle to
//! the head circle, so arrow U makes the circle through the a--d arc the tail
//! and the circle through b--c the head, and arrow D the reverse.

use crate::diagram::{AnnularDiagram, Arrow, End};
use crate::matrix::Gf2Mat;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CubeError {
    #[error("resolution {mask:#b}: a circle crosses gamma with net intersection {net}")]
    CircleWinding { mask: u64, net: i64 },
    #[error("diagram has {0} crossings; at most 24 are supported")]
    TooManyCrossings(usize),
    #[error("edge sign assignment: the face constraint system is inconsistent")]
    SignSystem,
}

/// One circle of a resolution: the edges traversed, each with the direction
/// of traversal relative to the edge's own orientation (+1 along, -1
/// against), plus the resulting net intersection with gamma.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circle {
    pub edges: Vec<(u32, i8)>,
    pub net: i64,
}

impl Circle {
    pub fn is_essential(&self) -> bool {
        self.net != 0
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    /// Circles in canonical order: all trivial, then all essential.
    pub circles: Vec<Circle>,
    pub n_trivial: usize,
    pub n_essential: usize,
    slot_circle: BTreeMap<(usize, u8), usize>,
}

impl Resolution {
    /// Canonical index of the circle containing the arc at this slot.
    pub fn circle_at(&self, crossing: usize, pos: u8) -> usize {
        self.slot_circle[&(crossing, pos)]
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// Two circles fuse; `src` is the ordered pair of source indices
    /// (ascending), `dst` the merged circle in the target resolution.
    Merge { src: (usize, usize), dst: usize },
    /// One circle divides; the arrow orders the results as (tail, head).
    Split { src: usize, dst_tail: usize, dst_head: usize },
}

/// One edge of the cube: resolve crossing `crossing` of vertex `from` from 0
/// to 1. `passive` maps the untouched source circles to their target indices.
#[derive(Clone, Debug)]
pub struct CubeEdge {
    pub from: u64,
    pub crossing: usize,
    pub kind: EdgeKind,
    pub passive: Vec<(usize, usize)>,
}

impl CubeEdge {
    pub fn to(&self) -> u64 {
        self.from | 1 << self.crossing
    }

    /// Target index of every source circle (merged circles share a target;
    /// a split source is sent to its tail's index here).
    pub fn circle_map(&self) -> BTreeMap<usize, usize> {
        let mut m: BTreeMap<usize, usize> = self.passive.iter().copied().collect();
        match self.kind {
            EdgeKind::Merge { src, dst } => {
                m.insert(src.0, dst);
                m.insert(src.1, dst);
            }
            EdgeKind::Split { src, dst_tail, .. } => {
                m.insert(src, dst_tail);
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionCube {
    pub n: usize,
    pub resolutions: Vec<Resolution>,
    /// Lexicographic by (from, crossing).
    pub edges: Vec<CubeEdge>,
    edge_index: BTreeMap<(u64, usize), usize>,
}

impl ResolutionCube {
    pub fn build(d: &AnnularDiagram) -> Result<Self, CubeError> {
        let n = d.crossings().len();
        if n > 24 {
            return Err(CubeError::TooManyCrossings(n));
        }
        let parity = d.winding_parity();
        let mut resolutions = Vec::with_capacity(1 << n);
        for mask in 0..(1u64 << n) {
            let r = trace_resolution(d, mask)?;
            assert_eq!(
                (r.n_essential % 2) as u8,
                parity,
                "essential circle parity must match the diagram's winding parity"
            );
            resolutions.push(r);
        }

        let mut edges = Vec::new();
        let mut edge_index = BTreeMap::new();
        for from in 0..(1u64 << n) {
            for x in 0..n {
                if from >> x & 1 == 1 {
                    continue;
                }
                let e = make_edge(d, &resolutions, from, x);
                edge_index.insert((from, x), edges.len());
                edges.push(e);
            }
        }
        Ok(ResolutionCube { n, resolutions, edges, edge_index })
    }

    pub fn edge(&self, from: u64, crossing: usize) -> &CubeEdge {
        &self.edges[self.edge_index[&(from, crossing)]]
    }

    pub fn edge_pos(&self, from: u64, crossing: usize) -> usize {
        self.edge_index[&(from, crossing)]
    }

    /// Square faces of the cube as (vertex, x, y) with x < y both unset in
    /// the vertex mask, in lexicographic order.
    pub fn faces(&self) -> Vec<(u64, usize, usize)> {
        let mut out = Vec::new();
        for from in 0..(1u64 << self.n) {
            for x in 0..self.n {
                if from >> x & 1 == 1 {
                    continue;
                }
                for y in x + 1..self.n {
                    if from >> y & 1 == 0 {
                        out.push((from, x, y));
                    }
                }
            }
        }
        out
    }
}

/// How the two composable routes around a face compare, with all edge maps
/// taken unsigned.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FaceClass {
    /// Both composites vanish.
    Zero,
    /// Equal and nonzero; the face needs an odd number of negative edges.
    Commute,
    /// Opposite and nonzero; the face needs an even number of negative edges.
    Anticommute,
}

/// Assign a sign to every cube edge so that each face anticommutes: faces
/// whose unsigned composites agree get an odd number of negative edges, faces
/// that already anticommute an even number. Free choices default to +1;
/// `alternative` flips along one kernel vector of the constraint system when
/// the solution is not unique.
pub fn assign_edge_signs(
    cube: &ResolutionCube,
    classes: &[FaceClass],
    alternative: bool,
) -> Result<Vec<i8>, CubeError> {
    let faces = cube.faces();
    assert_eq!(faces.len(), classes.len());
    let num_edges = cube.edges.len();
    let active: Vec<usize> =
        (0..faces.len()).filter(|&i| classes[i] != FaceClass::Zero).collect();
    let mut m = Gf2Mat::zero(active.len(), num_edges);
    let mut rhs = vec![false; active.len()];
    for (r, &fi) in active.iter().enumerate() {
        let (v, x, y) = faces[fi];
        for (from, crossing) in
            [(v, x), (v | 1 << x, y), (v, y), (v | 1 << y, x)]
        {
            m.set(r, cube.edge_pos(from, crossing), true);
        }
        rhs[r] = classes[fi] == FaceClass::Commute;
    }
    let mut sol = m.solve(&rhs).ok_or(CubeError::SignSystem)?;
    if alternative {
        let pivots = {
            let mut mm = m.clone();
            mm.eliminate()
        };
        if let Some(free) = (0..num_edges).find(|c| !pivots.contains(c)) {
            let k = m.kernel_vector_for(free).expect("column is free");
            for (s, kv) in sol.iter_mut().zip(k) {
                *s ^= kv;
            }
        }
    }
    Ok(sol.into_iter().map(|neg| if neg { -1 } else { 1 }).collect())
}

fn trace_resolution(d: &AnnularDiagram, mask: u64) -> Result<Resolution, CubeError> {
    let partner = |crossing: usize, pos: u8| -> u8 {
        let bit = mask >> crossing & 1;
        match (bit, pos) {
            (0, 0) => 1,
            (0, 1) => 0,
            (0, 2) => 3,
            (0, 3) => 2,
            (1, 0) => 3,
            (1, 3) => 0,
            (1, 1) => 2,
            (1, 2) => 1,
            _ => unreachable!(),
        }
    };

    let mut visited: BTreeSet<u32> = BTreeSet::new();
    let mut found: Vec<(Circle, Vec<(usize, u8)>)> = Vec::new();
    for e0 in d.edge_ids() {
        if visited.contains(&e0) {
            continue;
        }
        if d.edge(e0).ends[0] == End::Loop {
            visited.insert(e0);
            found.push((Circle { edges: vec![(e0, 1)], net: 0 }, Vec::new()));
            continue;
        }
        let mut circ = Vec::new();
        let mut slots = Vec::new();
        let start_entry = 1 - d.edge(e0).head;
        let mut e = e0;
        let mut exit = d.edge(e0).head;
        loop {
            let info = d.edge(e);
            circ.push((e, if exit == info.head { 1i8 } else { -1 }));
            visited.insert(e);
            let End::Slot { crossing, pos } = info.ends[exit] else {
                unreachable!("crossing edge has slot ends")
            };
            let pos2 = partner(crossing, pos);
            slots.push((crossing, pos));
            slots.push((crossing, pos2));
            let e2 = d.crossings()[crossing][pos2 as usize];
            let info2 = d.edge(e2);
            let entry2 = info2
                .ends
                .iter()
                .position(|x| *x == End::Slot { crossing, pos: pos2 })
                .expect("slot end recorded");
            if e2 == e0 {
                assert_eq!(entry2, start_entry, "circle closes where it began");
                break;
            }
            e = e2;
            exit = 1 - entry2;
        }
        found.push((Circle { edges: circ, net: 0 }, slots));
    }

    // Net gamma intersection per circle; an edge traversed against its
    // orientation crosses gamma with the opposite sign.
    for (c, _) in &mut found {
        let mut net = 0i64;
        for &(ge, gs) in d.gamma() {
            for &(e, dir) in &c.edges {
                if e == ge {
                    net += gs as i64 * dir as i64;
                }
            }
        }
        if net.abs() > 1 {
            return Err(CubeError::CircleWinding { mask, net });
        }
        c.net = net;
    }

    // Canonical order: trivial circles in discovery order, then essential
    // circles by the position of their first gamma intersection.
    let first_gamma = |c: &Circle| -> usize {
        d.gamma()
            .iter()
            .position(|(ge, _)| c.edges.iter().any(|(e, _)| e == ge))
            .expect("essential circle meets gamma")
    };
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_key(|&i| {
        let c = &found[i].0;
        if c.is_essential() {
            (1, first_gamma(c))
        } else {
            (0, i)
        }
    });

    let mut circles = Vec::with_capacity(found.len());
    let mut slot_circle = BTreeMap::new();
    for (ci, &oi) in order.iter().enumerate() {
        for &slot in &found[oi].1 {
            slot_circle.insert(slot, ci);
        }
        circles.push(found[oi].0.clone());
    }
    let n_trivial = circles.iter().filter(|c| !c.is_essential()).count();
    let n_essential = circles.len() - n_trivial;
    Ok(Resolution { circles, n_trivial, n_essential, slot_circle })
}

fn make_edge(
    d: &AnnularDiagram,
    resolutions: &[Resolution],
    from: u64,
    x: usize,
) -> CubeEdge {
    let to = from | 1 << x;
    let rs = &resolutions[from as usize];
    let rt = &resolutions[to as usize];
    let s1 = rs.circle_at(x, 0);
    let s2 = rs.circle_at(x, 2);
    let t_ad = rt.circle_at(x, 0);
    let t_bc = rt.circle_at(x, 1);
    let kind = if s1 != s2 {
        assert_eq!(t_ad, t_bc, "merge produces one circle");
        EdgeKind::Merge { src: (s1.min(s2), s1.max(s2)), dst: t_ad }
    } else {
        assert_ne!(t_ad, t_bc, "split produces two circles");
        let (dst_tail, dst_head) = match d.arrows()[x] {
            Arrow::Up => (t_ad, t_bc),
            Arrow::Down => (t_bc, t_ad),
        };
        EdgeKind::Split { src: s1, dst_tail, dst_head }
    };

    // Untouched circles keep their edge sets; match on those.
    let key = |c: &Circle| -> Vec<u32> {
        let mut v: Vec<u32> = c.edges.iter().map(|&(e, _)| e).collect();
        v.sort_unstable();
        v
    };
    let tgt: BTreeMap<Vec<u32>, usize> =
        rt.circles.iter().enumerate().map(|(i, c)| (key(c), i)).collect();
    let active: BTreeSet<usize> = match kind {
        EdgeKind::Merge { src, .. } => [src.0, src.1].into_iter().collect(),
        EdgeKind::Split { src, .. } => [src].into_iter().collect(),
    };
    let passive = rs
        .circles
        .iter()
        .enumerate()
        .filter(|(i, _)| !active.contains(i))
        .map(|(i, c)| (i, *tgt.get(&key(c)).expect("untouched circle persists")))
        .collect();
    CubeEdge { from, crossing: x, kind, passive }
}
