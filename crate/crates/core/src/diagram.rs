//! Annular link diagrams as decorated planar-diagram codes.
//!
//! A diagram lives in the annulus with the inner puncture marked by a
//! basepoint X and the outer region by O; an embedded arc gamma runs from X
//! to O, transverse to the diagram and missing all crossings.
//!
//! Encoding:
//! * `crossings`: one quadruple of edge ids per crossing, listed
//!   counterclockwise starting from the incoming under-strand. With the
//!   crossing drawn so the under-strand runs SW -> NE (over-strand NW -- SE),
//!   the slots are a = SW (under in), b = SE, c = NE (under out), d = NW.
//! * `arrows`: one of `U`/`D` per crossing, the arrow decoration drawn in the
//!   frame above; it fixes the ordered pair of circles at a split (see the
//!   cube module).
//! * `loops`: crossing-free closed components, one edge id each.
//! * `gamma`: the transverse intersections of gamma with the diagram, in
//!   order of traversal from X to O, as `[edge id, sign]` pairs. The sign is
//!   +1 when the oriented strand crosses gamma counterclockwise around X
//!   (left-to-right as seen along gamma), -1 otherwise.
//!
//! Edge orientations are recovered from the under-strand convention (slot a
//! points in, slot c points out) and propagated through over-strands. A
//! component that is nowhere an under-strand has two consistent orientations;
//! we deterministically orient its smallest edge id out of its first
//! appearance (crossing order, then slot order). Gamma signs in a file are
//! relative to the orientations this procedure derives.

use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type EdgeId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Arrow {
    Up,
    Down,
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arrow::Up => "U",
            Arrow::Down => "D",
        })
    }
}

/// One end of an edge: a crossing slot, or the closing of a loop edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum End {
    Slot { crossing: usize, pos: u8 },
    Loop,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeInfo {
    pub ends: [End; 2],
    /// Index into `ends` of the head (the end where the edge points into the
    /// crossing). Loops carry no orientation data; `head` stays 0.
    pub head: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiagramStats {
    pub n_plus: usize,
    pub n_minus: usize,
    pub num_components: usize,
}

#[derive(Error, Debug)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{arrows} arrows for {crossings} crossings")]
    ArrowCount { arrows: usize, crossings: usize },
    #[error("arrow {0:?} is not \"U\" or \"D\"")]
    BadArrow(String),
    #[error("edge {0}: {1}")]
    EdgeUsage(EdgeId, String),
    #[error("gamma references edge {0}, which is not in the diagram")]
    GammaEdge(EdgeId),
    #[error("gamma sign for edge {0} must be 1 or -1, got {1}")]
    GammaSign(EdgeId, i64),
    #[error("strand orientations are inconsistent around crossing {0}")]
    Orientation(usize),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    name: Option<String>,
    #[serde(default)]
    crossings: Vec<[EdgeId; 4]>,
    #[serde(default)]
    arrows: Vec<String>,
    #[serde(default)]
    loops: Vec<EdgeId>,
    #[serde(default)]
    gamma: Vec<(EdgeId, i64)>,
}

/// A validated annular link diagram with derived orientation data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnnularDiagram {
    pub name: Option<String>,
    crossings: Vec<[EdgeId; 4]>,
    arrows: Vec<Arrow>,
    loops: Vec<EdgeId>,
    gamma: Vec<(EdgeId, i8)>,
    edges: BTreeMap<EdgeId, EdgeInfo>,
    signs: Vec<i8>,
    num_components: usize,
}

impl AnnularDiagram {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let raw: RawDiagram =
            toml::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for a in &raw.arrows {
            arrows.push(match a.as_str() {
                "U" => Arrow::Up,
                "D" => Arrow::Down,
                other => return Err(DiagramError::BadArrow(other.to_string())),
            });
        }
        let mut gamma = Vec::with_capacity(raw.gamma.len());
        for &(e, s) in &raw.gamma {
            match s {
                1 => gamma.push((e, 1i8)),
                -1 => gamma.push((e, -1i8)),
                other => return Err(DiagramError::GammaSign(e, other)),
            }
        }
        Self::new(raw.name, raw.crossings, arrows, raw.loops, gamma)
    }

    pub fn new(
        name: Option<String>,
        crossings: Vec<[EdgeId; 4]>,
        arrows: Vec<Arrow>,
        loops: Vec<EdgeId>,
        gamma: Vec<(EdgeId, i8)>,
    ) -> Result<Self, DiagramError> {
        if arrows.len() != crossings.len() {
            return Err(DiagramError::ArrowCount {
                arrows: arrows.len(),
                crossings: crossings.len(),
            });
        }

        // Collect the two ends of every edge.
        let mut ends: BTreeMap<EdgeId, Vec<End>> = BTreeMap::new();
        for (ci, quad) in crossings.iter().enumerate() {
            for (pos, &e) in quad.iter().enumerate() {
                ends.entry(e).or_default().push(End::Slot { crossing: ci, pos: pos as u8 });
            }
        }
        for &e in &loops {
            if ends.contains_key(&e) {
                return Err(DiagramError::EdgeUsage(
                    e,
                    "declared as a loop but also attached to a crossing".into(),
                ));
            }
            let prev = ends.insert(e, vec![End::Loop, End::Loop]);
            if prev.is_some() {
                return Err(DiagramError::EdgeUsage(e, "declared as a loop twice".into()));
            }
        }
        let mut edges = BTreeMap::new();
        for (e, v) in &ends {
            if v.len() != 2 {
                return Err(DiagramError::EdgeUsage(
                    *e,
                    format!("attached to {} crossing slots (need exactly 2)", v.len()),
                ));
            }
            edges.insert(*e, EdgeInfo { ends: [v[0], v[1]], head: 0 });
        }

        for &(e, _) in &gamma {
            if !edges.contains_key(&e) {
                return Err(DiagramError::GammaEdge(e));
            }
        }

        let mut d = AnnularDiagram {
            name,
            crossings,
            arrows,
            loops,
            gamma,
            edges,
            signs: Vec::new(),
            num_components: 0,
        };
        d.orient()?;
        d.derive_signs();
        d.count_components();
        Ok(d)
    }

    /// Propagate strand orientations. Constraint graph: the two appearances
    /// of an edge point in opposite senses, and so do the two over-slots of a
    /// crossing; under-slots are forced (a in, c out).
    fn orient(&mut self) -> Result<(), DiagramError> {
        // incoming[edge] = Some(end index of the head)
        #[derive(Clone, Copy, PartialEq)]
        enum Dir {
            In,
            Out,
        }
        // Node = (edge, end index). Peers: same edge other end (opposite),
        // over-slot partner at the same crossing (opposite).
        let ids: Vec<EdgeId> = self.edges.keys().copied().collect();
        let idx: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut dir: Vec<[Option<Dir>; 2]> = vec![[None, None]; ids.len()];

        let end_at =
            |edges: &BTreeMap<EdgeId, EdgeInfo>, ci: usize, pos: u8, quad: &[EdgeId; 4]| {
                let e = quad[pos as usize];
                let info = &edges[&e];
                let which = info
                    .ends
                    .iter()
                    .position(|x| *x == End::Slot { crossing: ci, pos })
                    .expect("slot end recorded");
                (e, which)
            };

        // Work queue of (edge index, end index, direction) assignments.
        let mut queue: Vec<(usize, usize, Dir)> = Vec::new();
        for (ci, quad) in self.crossings.iter().enumerate() {
            let (e, w) = end_at(&self.edges, ci, 0, quad);
            queue.push((idx[&e], w, Dir::In));
            let (e, w) = end_at(&self.edges, ci, 2, quad);
            queue.push((idx[&e], w, Dir::Out));
        }

        // Precompute over-slot partners: ((edge,end) -> (edge,end)).
        let mut partner: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for (ci, quad) in self.crossings.iter().enumerate() {
            let (e1, w1) = end_at(&self.edges, ci, 1, quad);
            let (e3, w3) = end_at(&self.edges, ci, 3, quad);
            partner.insert((idx[&e1], w1), (idx[&e3], w3));
            partner.insert((idx[&e3], w3), (idx[&e1], w1));
        }

        let settle = |queue: &mut Vec<(usize, usize, Dir)>,
                          dir: &mut Vec<[Option<Dir>; 2]>|
         -> Result<(), DiagramError> {
            while let Some((ei, w, d)) = queue.pop() {
                match dir[ei][w] {
                    Some(existing) => {
                        if existing != d {
                            // Conflict: name the crossing if per possible.
                            let e = ids[ei];
                            let ci = match self.edges[&e].ends[w] {
                                End::Slot { crossing, .. } => crossing,
                                End::Loop => 0,
                            };
                            return Err(DiagramError::Orientation(ci));
                        }
                    }
                    None => {
                        dir[ei][w] = Some(d);
                        let opp = if d == Dir::In { Dir::Out } else { Dir::In };
                        queue.push((ei, 1 - w, opp));
                        if let Some(&(pe, pw)) = partner.get(&(ei, w)) {
                            queue.push((pe, pw, opp));
                        }
                    }
                }
            }
            Ok(())
        };
        settle(&mut queue, &mut dir)?;

        // Any still-undirected crossing edge belongs to an all-over
        // component: orient its smallest edge out of its first appearance.
        loop {
            let Some(ei) = (0..ids.len()).find(|&i| {
                dir[i][0].is_none() && self.edges[&ids[i]].ends[0] != End::Loop
            }) else {
                break;
            };
            let first = if self.edges[&ids[ei]].ends[0] <= self.edges[&ids[ei]].ends[1] {
                0
            } else {
                1
            };
            queue.push((ei, first, Dir::Out));
            settle(&mut queue, &mut dir)?;
        }

        for (i, e) in ids.iter().enumerate() {
            let info = self.edges.get_mut(e).unwrap();
            if info.ends[0] == End::Loop {
                continue;
            }
            info.head = match dir[i] {
                [Some(Dir::In), Some(Dir::Out)] => 0,
                [Some(Dir::Out), Some(Dir::In)] => 1,
                _ => unreachable!("orientation left unsettled for edge {e}"),
            };
        }
        Ok(())
    }

    fn derive_signs(&mut self) {
        // Positive crossing: the over-strand enters at slot d (3); negative:
        // at slot b (1).
        self.signs = self
            .crossings
            .iter()
            .enumerate()
            .map(|(ci, quad)| {
                let e = quad[3];
                let info = &self.edges[&e];
                let head_end = info.ends[info.head];
                if head_end == (End::Slot { crossing: ci, pos: 3 }) {
                    1
                } else {
                    -1
                }
            })
            .collect();
    }

    fn count_components(&mut self) {
        // Union edges through each crossing: a~c (under-strand), b~d (over).
        let ids: Vec<EdgeId> = self.edges.keys().copied().collect();
        let idx: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf: Vec<usize> = (0..ids.len()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        for quad in &self.crossings {
            for (p, q) in [(0, 2), (1, 3)] {
                let (a, b) = (idx[&quad[p]], idx[&quad[q]]);
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                if ra != rb {
                    uf[ra] = rb;
                }
            }
        }
        let mut roots: Vec<usize> = (0..ids.len()).map(|i| find(&mut uf, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        self.num_components = roots.len();
    }

    /// Canonical serialization; `parse(to_text(d)) == d` exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.name {
            s.push_str(&format!("name = {:?}\n", name));
        }
        let quads: Vec<String> = self
            .crossings
            .iter()
            .map(|q| format!("[{}, {}, {}, {}]", q[0], q[1], q[2], q[3]))
            .collect();
        s.push_str(&format!("crossings = [{}]\n", quads.join(", ")));
        let arrows: Vec<String> = self.arrows.iter().map(|a| format!("\"{a}\"")).collect();
        s.push_str(&format!("arrows = [{}]\n", arrows.join(", ")));
        let loops: Vec<String> = self.loops.iter().map(|e| e.to_string()).collect();
        s.push_str(&format!("loops = [{}]\n", loops.join(", ")));
        let gamma: Vec<String> =
            self.gamma.iter().map(|(e, s)| format!("[{e}, {s}]")).collect();
        s.push_str(&format!("gamma = [{}]\n", gamma.join(", ")));
        s
    }

    /// The diagram's name, or a placeholder when none was given.
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn loops(&self) -> &[EdgeId] {
        &self.loops
    }

    pub fn gamma(&self) -> &[(EdgeId, i8)] {
        &self.gamma
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeInfo {
        &self.edges[&e]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// Sign (+1/-1) of each crossing, derived from the strand orientations.
    pub fn crossing_signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            n_plus: self.signs.iter().filter(|&&s| s > 0).count(),
            n_minus: self.signs.iter().filter(|&&s| s < 0).count(),
            num_components: self.num_components,
        }
    }

    /// Parity of the algebraic intersection number of the (oriented) link
    /// with gamma; equals the parity of the essential circle count of every
    /// resolution.
    pub fn winding_parity(&self) -> u8 {
        (self.gamma.iter().map(|&(_, s)| s as i64).sum::<i64>().rem_euclid(2)) as u8
    }

    /// Same diagram with crossings (and their arrows) listed in a different
    /// order. `perm[i]` gives the old index of the new crossing `i`.
    pub fn with_crossing_order(&self, perm: &[usize]) -> Result<Self, DiagramError> {
        assert_eq!(perm.len(), self.crossings.len());
        let crossings: Vec<_> = perm.iter().map(|&i| self.crossings[i]).collect();
        let arrows: Vec<_> = perm.iter().map(|&i| self.arrows[i]).collect();
        let mut inv = vec![0usize; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        // Derive the reordered diagram's edge orientations first: the
        // tie-break that orients fully-over components follows crossing
        // order, so some edges may flip, and the gamma signs (stored
        // relative to edge orientations) must flip with them.
        let probe = Self::new(
            self.name.clone(),
            crossings.clone(),
            arrows.clone(),
            self.loops.clone(),
            vec![],
        )?;
        let map_end = |e: End| -> End {
            match e {
                End::Slot { crossing, pos } => End::Slot { crossing: inv[crossing], pos },
                End::Loop => End::Loop,
            }
        };
        let gamma = self
            .gamma
            .iter()
            .map(|&(id, sign)| {
                let old = &self.edges[&id];
                let new = &probe.edges[&id];
                let old_head = map_end(old.ends[old.head]);
                let flipped = new.ends[new.head] != old_head;
                (id, if flipped { -sign } else { sign })
            })
            .collect();
        Self::new(self.name.clone(), crossings, arrows, self.loops.clone(), gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn essential_unknot() -> AnnularDiagram {
        AnnularDiagram::parse("name = \"d_e\"\nloops = [0]\ngamma = [[0, 1]]\n").unwrap()
    }

    #[test]
    fn essential_unknot_stats() {
        let d = essential_unknot();
        assert_eq!(d.stats(), DiagramStats { n_plus: 0, n_minus: 0, num_components: 1 });
        assert_eq!(d.winding_parity(), 1);
    }

    #[test]
    fn trivial_unknot_stats() {
        let d = AnnularDiagram::parse("loops = [0]\ngamma = []\n").unwrap();
        assert_eq!(d.stats().num_components, 1);
        assert_eq!(d.winding_parity(), 0);
    }

    #[test]
    fn positive_kink_sign() {
        // One-crossing kink on an essential unknot; the over-strand runs
        // d -> b, so the crossing is positive.
        let d = AnnularDiagram::parse(
            "crossings = [[0, 0, 1, 1]]\narrows = [\"U\"]\ngamma = [[0, 1]]\n",
        )
        .unwrap();
        assert_eq!(d.crossing_signs(), &[1]);
        assert_eq!(d.stats(), DiagramStats { n_plus: 1, n_minus: 0, num_components: 1 });
        assert_eq!(d.winding_parity(), 1);
    }

    #[test]
    fn negative_kink_sign() {
        let d = AnnularDiagram::parse(
            "crossings = [[0, 1, 1, 0]]\narrows = [\"U\"]\ngamma = [[0, 1]]\n",
        )
        .unwrap();
        assert_eq!(d.crossing_signs(), &[-1]);
        assert_eq!(d.stats(), DiagramStats { n_plus: 0, n_minus: 1, num_components: 1 });
    }

    #[test]
    fn two_parallel_essential_circles() {
        let d = AnnularDiagram::parse("loops = [0, 1]\ngamma = [[0, 1], [1, 1]]\n").unwrap();
        assert_eq!(d.winding_parity(), 0);
        assert_eq!(d.stats().num_components, 2);
    }

    #[test]
    fn braid_closure_signs() {
        // Closure of sigma_1^2 on two strands: the annular Hopf link, two
        // positive crossings, two components.
        let d = AnnularDiagram::parse(
            "crossings = [[1, 2, 3, 0], [2, 1, 0, 3]]\narrows = [\"U\", \"U\"]\ngamma = [[0, 1], [1, 1]]\n",
        )
        .unwrap();
        assert_eq!(d.stats(), DiagramStats { n_plus: 2, n_minus: 0, num_components: 2 });
        assert_eq!(d.winding_parity(), 0);
    }

    #[test]
    fn round_trip_is_exact() {
        let texts = [
            "name = \"d_e\"\nloops = [0]\ngamma = [[0, 1]]\n",
            "crossings = [[1, 2, 3, 0], [2, 1, 0, 3]]\narrows = [\"U\", \"D\"]\ngamma = [[0, 1], [1, -1]]\n",
        ];
        for t in texts {
            let d = AnnularDiagram::parse(t).unwrap();
            let s = d.to_text();
            let d2 = AnnularDiagram::parse(&s).unwrap();
            assert_eq!(d, d2);
            assert_eq!(s, d2.to_text());
        }
    }

    #[test]
    fn edge_usage_errors() {
        assert!(matches!(
            AnnularDiagram::parse("crossings = [[0, 0, 0, 1]]\narrows = [\"U\"]\n"),
            Err(DiagramError::EdgeUsage(..))
        ));
        assert!(matches!(
            AnnularDiagram::parse("loops = [0, 0]\n"),
            Err(DiagramError::EdgeUsage(..))
        ));
        assert!(matches!(
            AnnularDiagram::parse("crossings = [[0, 0, 1, 1]]\narrows = [\"U\"]\nloops = [0]\n"),
            Err(DiagramError::EdgeUsage(..))
        ));
    }

    #[test]
    fn arrow_and_gamma_errors() {
        assert!(matches!(
            AnnularDiagram::parse("crossings = [[0, 0, 1, 1]]\narrows = []\n"),
            Err(DiagramError::ArrowCount { .. })
        ));
        assert!(matches!(
            AnnularDiagram::parse("crossings = [[0, 0, 1, 1]]\narrows = [\"X\"]\n"),
            Err(DiagramError::BadArrow(..))
        ));
        assert!(matches!(
            AnnularDiagram::parse("loops = [0]\ngamma = [[7, 1]]\n"),
            Err(DiagramError::GammaEdge(7))
        ));
        assert!(matches!(
            AnnularDiagram::parse("loops = [0]\ngamma = [[0, 2]]\n"),
            Err(DiagramError::GammaSign(0, 2))
        ));
    }

    #[test]
    fn orientation_conflict_is_detected() {
        // Edge 0 sits in two under-in slots: it would need a head at both
        // ends.
        let r = AnnularDiagram::parse(
            "crossings = [[0, 1, 2, 3], [0, 3, 2, 1]]\narrows = [\"U\", \"U\"]\n",
        );
        assert!(matches!(r, Err(DiagramError::Orientation(_))), "{r:?}");
    }

    #[test]
    fn all_over_component_gets_deterministic_orientation() {
        // R2 poke of a circle (edges 2, 3) entirely over an essential one:
        // the over-component's orientation comes from the documented rule,
        // and the crossing signs still come out one positive, one negative.
        let d = AnnularDiagram::parse(
            "crossings = [[0, 3, 1, 2], [1, 3, 0, 2]]\narrows = [\"U\", \"U\"]\ngamma = [[0, 1]]\n",
        )
        .unwrap();
        assert_eq!(d.stats(), DiagramStats { n_plus: 1, n_minus: 1, num_components: 2 });
        let e2 = d.edge(2);
        // Rule: edge 2 points out of its first appearance (crossing 0, slot d).
        assert_eq!(e2.ends[e2.head], End::Slot { crossing: 1, pos: 3 });
    }

    #[test]
    fn crossing_permutation_keeps_stats() {
        let d = AnnularDiagram::parse(
            "crossings = [[1, 2, 3, 0], [2, 1, 0, 3]]\narrows = [\"U\", \"U\"]\ngamma = [[0, 1], [1, 1]]\n",
        )
        .unwrap();
        let p = d.with_crossing_order(&[1, 0]).unwrap();
        assert_eq!(d.stats(), p.stats());
        assert_eq!(d.winding_parity(), p.winding_parity());
    }
}
