//! The bundled diagram corpus and the Reidemeister-invariance harness.
//!
//! Diagrams live as plain text files under `corpus/` at the repository root
//! and are also embedded into the library so every consumer sees the same
//! data. `pairs.toml` declares which diagrams differ by a single annular
//! Reidemeister move; `compare_pair` asserts that both members have the same
//! trigraded homology dimensions and the same representation fingerprint.

use crate::algebra::{ChainComplex, Key, Supergrading};
use crate::diagram::AnnularDiagram;
use crate::gl11::{action_on_homology, rep_fingerprint, RepFingerprint};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;

/// Every bundled diagram, keyed by file stem, embedded at compile time.
pub const FILES: &[(&str, &str)] = &[
    ("essential_unknot", include_str!("../../../corpus/essential_unknot.toml")),
    ("trivial_unknot", include_str!("../../../corpus/trivial_unknot.toml")),
    ("split_pair_mixed", include_str!("../../../corpus/split_pair_mixed.toml")),
    ("split_pair_essential", include_str!("../../../corpus/split_pair_essential.toml")),
    ("kink_positive", include_str!("../../../corpus/kink_positive.toml")),
    ("kink_negative", include_str!("../../../corpus/kink_negative.toml")),
    ("kink_trivial", include_str!("../../../corpus/kink_trivial.toml")),
    ("hopf_link", include_str!("../../../corpus/hopf_link.toml")),
    ("r2_mixed_before", include_str!("../../../corpus/r2_mixed_before.toml")),
    ("r2_braid_before", include_str!("../../../corpus/r2_braid_before.toml")),
    ("r3_before", include_str!("../../../corpus/r3_before.toml")),
    ("r3_after", include_str!("../../../corpus/r3_after.toml")),
    ("trefoil_braid", include_str!("../../../corpus/trefoil_braid.toml")),
    ("figure_eight_braid", include_str!("../../../corpus/figure_eight_braid.toml")),
    ("torus_3_3", include_str!("../../../corpus/torus_3_3.toml")),
    ("torus_2_8", include_str!("../../../corpus/torus_2_8.toml")),
];

const PAIRS: &str = include_str!("../../../corpus/pairs.toml");

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveKind {
    /// Reidemeister 1, left-handed twist.
    R1L,
    /// Reidemeister 1, right-handed twist.
    R1R,
    R2,
    R3,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1L => "R1L",
            MoveKind::R1R => "R1R",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
        })
    }
}

/// Two diagrams related by one annular Reidemeister move.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub before: AnnularDiagram,
    pub after: AnnularDiagram,
    pub move_kind: MoveKind,
    pub note: String,
}

#[derive(Deserialize)]
struct PairManifest {
    pair: Vec<RawPair>,
}

#[derive(Deserialize)]
struct RawPair {
    before: String,
    after: String,
    #[serde(rename = "move")]
    move_kind: String,
    note: String,
}

/// Look up and parse one bundled diagram by file stem.
pub fn load_diagram(stem: &str) -> Result<AnnularDiagram, String> {
    let (_, text) = FILES
        .iter()
        .find(|(s, _)| *s == stem)
        .ok_or_else(|| format!("no bundled diagram named {stem:?}"))?;
    AnnularDiagram::parse(text).map_err(|e| format!("corpus diagram {stem}: {e}"))
}

/// All bundled diagrams plus the declared move pairs.
pub fn load_corpus() -> Result<(Vec<AnnularDiagram>, Vec<MovePair>), String> {
    let mut diagrams = Vec::with_capacity(FILES.len());
    for (stem, _) in FILES {
        diagrams.push(load_diagram(stem)?);
    }
    let manifest: PairManifest =
        toml::from_str(PAIRS).map_err(|e| format!("pair manifest: {e}"))?;
    let mut pairs = Vec::with_capacity(manifest.pair.len());
    for raw in manifest.pair {
        let move_kind = match raw.move_kind.as_str() {
            "R1L" => MoveKind::R1L,
            "R1R" => MoveKind::R1R,
            "R2" => MoveKind::R2,
            "R3" => MoveKind::R3,
            other => return Err(format!("pair manifest: unknown move {other:?}")),
        };
        pairs.push(MovePair {
            before: load_diagram(&raw.before)?,
            after: load_diagram(&raw.after)?,
            move_kind,
            note: raw.note,
        });
    }
    Ok((diagrams, pairs))
}

/// The outcome of comparing two diagrams as annular invariants.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub dims_before: BTreeMap<Key, usize>,
    pub dims_after: BTreeMap<Key, usize>,
    pub fingerprint_before: RepFingerprint,
    pub fingerprint_after: RepFingerprint,
}

impl CompareReport {
    pub fn dims_equal(&self) -> bool {
        self.dims_before == self.dims_after
    }

    pub fn fingerprints_equal(&self) -> bool {
        self.fingerprint_before == self.fingerprint_after
    }

    /// The verdict: equal trigraded dimensions and equal fingerprints.
    pub fn isomorphic(&self) -> bool {
        self.dims_equal() && self.fingerprints_equal()
    }
}

/// Compute homology dimensions and action fingerprints of both diagrams.
pub fn compare_diagrams(
    a: &AnnularDiagram,
    b: &AnnularDiagram,
) -> Result<CompareReport, String> {
    let fingerprint = |d: &AnnularDiagram| -> Result<_, String> {
        let cx = ChainComplex::build(d).map_err(|e| format!("{}: {e}", d.label()))?;
        let dims = cx.homology_dims();
        let rep = action_on_homology(&cx, Supergrading::Default)?;
        rep.verify()?;
        Ok((dims, rep_fingerprint(&rep)))
    };
    let (dims_before, fingerprint_before) = fingerprint(a)?;
    let (dims_after, fingerprint_after) = fingerprint(b)?;
    Ok(CompareReport { dims_before, dims_after, fingerprint_before, fingerprint_after })
}

/// Compare the two members of a move pair.
pub fn compare_pair(p: &MovePair) -> Result<CompareReport, String> {
    compare_diagrams(&p.before, &p.after)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_loads_and_is_diverse() {
        let (diagrams, pairs) = load_corpus().unwrap();
        assert!(diagrams.len() >= 8);
        assert!(pairs.len() >= 6);
        let crossing_counts: Vec<usize> =
            diagrams.iter().map(|d| d.crossings().len()).collect();
        assert!(crossing_counts.contains(&0));
        assert!(crossing_counts.iter().any(|&c| c == 8));
        let parities: Vec<u8> = diagrams.iter().map(|d| d.winding_parity()).collect();
        assert!(parities.contains(&0) && parities.contains(&1));
        // Both trivial and essential circles appear somewhere.
        assert!(diagrams.iter().any(|d| d.gamma().is_empty()));
        assert!(diagrams.iter().any(|d| !d.gamma().is_empty()));
        // All four move kinds are exercised.
        for kind in [MoveKind::R1L, MoveKind::R1R, MoveKind::R2, MoveKind::R3] {
            assert!(pairs.iter().any(|p| p.move_kind == kind), "{kind} missing");
        }
    }

    #[test]
    fn corpus_files_are_canonical() {
        for (stem, text) in FILES {
            let d = load_diagram(stem).unwrap();
            assert_eq!(&d.to_text(), text, "{stem} differs from canonical form");
        }
    }

    #[test]
    fn every_corpus_diagram_builds() {
        let (diagrams, _) = load_corpus().unwrap();
        for d in &diagrams {
            ChainComplex::build(&d).unwrap_or_else(|e| panic!("{}: {e}", d.label()));
        }
    }

    #[test]
    fn small_move_pairs_compare_isomorphic() {
        let (_, pairs) = load_corpus().unwrap();
        for p in pairs.iter().filter(|p| p.before.crossings().len() <= 2) {
            let report = compare_pair(p).unwrap();
            assert!(
                report.isomorphic(),
                "{} vs {} ({})",
                p.before.label(),
                p.after.label(),
                p.move_kind
            );
        }
    }

    #[test]
    fn unknot_negative_control() {
        let a = load_diagram("essential_unknot").unwrap();
        let b = load_diagram("trivial_unknot").unwrap();
        let report = compare_diagrams(&a, &b).unwrap();
        assert!(!report.isomorphic());
        assert!(!report.dims_equal());
        assert!(!report.fingerprints_equal());
    }
}
