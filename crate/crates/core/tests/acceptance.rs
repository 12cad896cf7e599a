//! Acceptance suite: nine end-to-end properties of the odd annular theory,
//! each one test function, run over the whole bundled corpus with exact
//! arithmetic (tolerance zero everywhere).

use num_traits::Zero;
use oddakh::algebra::{ChainComplex, Key, Supergrading};
use oddakh::check;
use oddakh::corpus::{compare_diagrams, compare_pair, load_corpus, load_diagram};
use oddakh::diagram::AnnularDiagram;
use oddakh::gl11::{
    action_on_homology, check_alpha_intertwines, check_edge_conjugation, check_k_parts,
    rep_fingerprint, vertex_action, weight_rep, ActionStyle, RepFingerprint,
};
use oddakh::matrix::QSparse;
use std::collections::BTreeMap;
use std::time::Instant;

fn corpus_diagrams() -> Vec<AnnularDiagram> {
    load_corpus().expect("corpus loads").0
}

fn build(d: &AnnularDiagram) -> ChainComplex {
    ChainComplex::build(d).unwrap_or_else(|e| panic!("{}: {e}", d.label()))
}

fn rational(v: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(num_bigint::BigInt::from(v))
}

#[test]
fn criterion_1_differential_identities() {
    for d in corpus_diagrams() {
        let start = Instant::now();
        let cx = build(&d);
        check::differential_identities(&cx)
            .unwrap_or_else(|e| panic!("{}: {e}", d.label()));
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "{}: differential identities took {elapsed:?}",
            d.label()
        );
    }
    println!("criterion 1 (differential identities): PASS");
}

#[test]
fn criterion_2_superalgebra_relations() {
    // Reference weight representations.
    for (m, n) in [(1, 0), (0, -1), (2, 1), (1, -1)] {
        weight_rep(m, n).verify().unwrap();
    }
    // Every cube vertex of every corpus diagram, in both descriptions.
    for d in corpus_diagrams() {
        let cx = build(&d);
        check::vertex_relations(&cx, Supergrading::Default)
            .unwrap_or_else(|e| panic!("{}: {e}", d.label()));
    }
    println!("criterion 2 (superalgebra relations): PASS");
}

#[test]
fn criterion_3_d0_intertwines_action() {
    for d in corpus_diagrams() {
        let cx = build(&d);
        check::d0_intertwining(&cx, Supergrading::Default)
            .unwrap_or_else(|e| panic!("{}: {e}", d.label()));
    }
    println!("criterion 3 (d0 commutes with the action): PASS");
}

#[test]
fn criterion_4_two_description_equivalence() {
    for d in corpus_diagrams() {
        let cx = build(&d);
        for v in 0..(1u64 << cx.cube.n) {
            check_alpha_intertwines(&cx, v, Supergrading::Default)
                .unwrap_or_else(|e| panic!("{}: {e}", d.label()));
        }
        for ei in 0..cx.cube.edges.len() {
            check_edge_conjugation(&cx, ei)
                .unwrap_or_else(|e| panic!("{}: {e}", d.label()));
            check_k_parts(&cx, ei).unwrap_or_else(|e| panic!("{}: {e}", d.label()));
        }
    }
    println!("criterion 4 (exterior/tensor equivalence and edge conjugation): PASS");
}

#[test]
fn criterion_5_grading_behavior() {
    for d in corpus_diagrams() {
        let cx = build(&d);
        let parity = rational(d.winding_parity() as i64);
        for v in 0..(1u64 << cx.cube.n) {
            let rep = vertex_action(&cx, v, ActionStyle::Exterior, Supergrading::Default);
            // h- acts on each basis vector by its k grading.
            for (idx, g) in rep.gradings.iter().enumerate() {
                assert_eq!(rep.h_minus.get(idx, idx), rational(g.2), "{}", d.label());
            }
            assert_eq!(
                rep.h_minus.iter().count(),
                rep.gradings.iter().filter(|g| g.2 != 0).count(),
                "{}: h- has off-diagonal or spurious entries",
                d.label()
            );
            // e and f shift k by +2 / -2 and preserve i and j-k.
            for (mat, dk) in [(&rep.e, 2i64), (&rep.f, -2)] {
                for (r, c, coef) in mat.iter() {
                    assert!(!coef.is_zero());
                    let (gs, gt) = (rep.gradings[c], rep.gradings[r]);
                    assert_eq!(gt.2 - gs.2, dk, "{}: k shift", d.label());
                    assert_eq!(gt.0, gs.0, "{}: i preserved", d.label());
                    assert_eq!(gt.1 - gt.2, gs.1 - gs.2, "{}: j-k preserved", d.label());
                }
            }
            // h+ is the winding-parity scalar.
            for idx in 0..rep.dim() {
                assert_eq!(rep.h_plus.get(idx, idx), parity, "{}", d.label());
            }
            assert_eq!(
                rep.h_plus.iter().count(),
                if d.winding_parity() == 0 { 0 } else { rep.dim() },
                "{}: h+ is diagonal",
                d.label()
            );
        }
    }
    println!("criterion 5 (grading behavior of e, f, h+, h-): PASS");
}

#[test]
fn criterion_6_mod2_oracle() {
    for d in corpus_diagrams() {
        let cx = build(&d);
        check::mod2_oracle(&d, &cx).unwrap_or_else(|e| panic!("{}: {e}", d.label()));
    }
    println!("criterion 6 (independent even GF(2) oracle): PASS");
}

#[test]
fn criterion_7_reidemeister_invariance() {
    let (_, pairs) = load_corpus().unwrap();
    assert!(pairs.len() >= 6);
    for p in &pairs {
        let report = compare_pair(p)
            .unwrap_or_else(|e| panic!("{} vs {}: {e}", p.before.label(), p.after.label()));
        assert!(
            report.isomorphic(),
            "{} move: {} vs {} not isomorphic",
            p.move_kind,
            p.before.label(),
            p.after.label()
        );
    }
    // Negative control: the two unknots are distinguished.
    let e = load_diagram("essential_unknot").unwrap();
    let t = load_diagram("trivial_unknot").unwrap();
    let control = compare_diagrams(&e, &t).unwrap();
    assert!(!control.isomorphic(), "negative control failed to distinguish");
    println!("criterion 7 (annular Reidemeister invariance + negative control): PASS");
}

#[test]
fn criterion_8_base_cases() {
    // Essential unknot: homology is the fundamental representation with
    // one class each at (0, 1, 1) and (0, -1, -1).
    let d = load_diagram("essential_unknot").unwrap();
    let cx = build(&d);
    let dims = cx.homology_dims();
    let expect: BTreeMap<Key, usize> =
        [((0, 1, 1), 1), ((0, -1, -1), 1)].into_iter().collect();
    assert_eq!(dims, expect);
    let rep = action_on_homology(&cx, Supergrading::Default).unwrap();
    rep.verify().unwrap();
    assert_eq!(rep_fingerprint(&rep), rep_fingerprint(&weight_rep(1, 0)));

    // Trivial unknot: the trivial 2-dimensional representation at k = 0.
    let d = load_diagram("trivial_unknot").unwrap();
    let cx = build(&d);
    let dims = cx.homology_dims();
    let expect: BTreeMap<Key, usize> =
        [((0, 1, 0), 1), ((0, -1, 0), 1)].into_iter().collect();
    assert_eq!(dims, expect);
    let rep = action_on_homology(&cx, Supergrading::Default).unwrap();
    rep.verify().unwrap();
    assert_eq!(rep.dim(), 2);
    assert!(rep.e.is_zero() && rep.f.is_zero());
    assert!(rep.h_plus.is_zero() && rep.h_minus.is_zero());
    assert!(rep.gradings.iter().all(|g| g.2 == 0));
    println!("criterion 8 (unknot base cases): PASS");
}

fn invariants_of(cx: &ChainComplex, mode: Supergrading) -> (BTreeMap<Key, usize>, RepFingerprint) {
    let dims = cx.homology_dims();
    let rep = action_on_homology(cx, mode).unwrap();
    rep.verify().unwrap();
    (dims, rep_fingerprint(&rep))
}

#[test]
fn criterion_9_convention_robustness() {
    let subjects = ["kink_negative", "hopf_link", "r2_braid_before", "r3_before", "trefoil_braid"];
    for stem in subjects {
        let d = load_diagram(stem).unwrap();
        let cx = build(&d);
        let baseline = invariants_of(&cx, Supergrading::Default);

        // (a) Permuting the crossing order.
        let n = d.crossings().len();
        let perm: Vec<usize> = (0..n).rev().collect();
        let permuted = d.with_crossing_order(&perm).unwrap();
        let cx_perm = build(&permuted);
        assert_eq!(invariants_of(&cx_perm, Supergrading::Default), baseline, "{stem}: crossing order");

        // (b) A different valid edge assignment.
        let cx_alt = ChainComplex::build_opts(&d, true).unwrap();
        let alt_differs = (0..cx.cube.edges.len())
            .any(|ei| cx.edge_sign(ei) != cx_alt.edge_sign(ei));
        assert!(alt_differs, "{stem}: alternative assignment equals the primary one");
        assert_eq!(invariants_of(&cx_alt, Supergrading::Default), baseline, "{stem}: edge assignment");

        // (c) Switching the supergrading flag relabels parities only.
        assert_eq!(invariants_of(&cx, Supergrading::KShift), baseline, "{stem}: supergrading");
    }
    println!("criterion 9 (convention robustness): PASS");
}

/// The homology action matrices are exact rational data; make sure the
/// equality used throughout is the strict one.
#[test]
fn exactness_spot_check() {
    let d = load_diagram("hopf_link").unwrap();
    let cx = build(&d);
    let rep = action_on_homology(&cx, Supergrading::Default).unwrap();
    let zero = QSparse::zero(rep.dim(), rep.dim());
    let effe = rep.e.mul(&rep.f).add(&rep.f.mul(&rep.e)).sub(&rep.h_plus);
    assert_eq!(effe, zero);
}
