//! Cross-module checks on fully worked instances: the large block-relation
//! recording tableaux, bitableau injectivity, and the rank-4 invariants of
//! the generator classification.

use gelfand_core::coxeter::{CoxType, SignedPerm};
use gelfand_core::equivalence::{plactic_moves, recording_effects, MoveLabel};
use gelfand_core::insertion::{bitableau_correspondence, domino_correspondence};
use gelfand_core::tableaux::DominoTableau;
use gelfand_core::verify::{classification_cases_agree, conjugation_dichotomy};

fn sp(s: &str) -> SignedPerm {
    SignedPerm::parse(s, None).unwrap()
}

/// A core-2, k=2 instance of the fourth relation at full length: the word
/// is exactly the interleaved pattern followed by its trigger. The two
/// recording tableaux take a specific 15-domino form.
#[test]
fn block4_recording_pair_core2() {
    let w = sp("5,4,3,-2,9,8,7,6,-11,-10,15,14,13,12,1");
    let v = sp("5,4,3,-2,11,9,8,7,6,-10,15,14,13,12,1");
    let moves = plactic_moves(&w, 2);
    assert!(
        moves.contains(&(
            MoveLabel::D4 {
                k: 2,
                forward: true
            },
            v.clone()
        )),
        "expected the k=2 block move from {w}, got {moves:?}"
    );
    // The first four insertions were traced by hand (the fourth letter
    // bumps the third-step domino into a twisted position, so the recording
    // domino 4 comes out horizontal); the remaining rows repeat the same
    // mechanics one block further out. For a double-width window the two
    // window dominoes 9 and 10 flip orientation jointly while the trigger
    // domino 15 stays put.
    let q_w_expect = DominoTableau::from_grid(
        2,
        &[
            &[0, 0, 1, 1, 5, 5, 11, 11],
            &[0, 2, 2, 6, 6, 12, 12],
            &[3, 3, 7, 7, 13, 13],
            &[4, 4, 8, 8, 14, 14],
            &[9, 10, 15],
            &[9, 10, 15],
        ],
    )
    .unwrap();
    let q_v_expect = DominoTableau::from_grid(
        2,
        &[
            &[0, 0, 1, 1, 5, 5, 11, 11],
            &[0, 2, 2, 6, 6, 12, 12],
            &[3, 3, 7, 7, 13, 13],
            &[4, 4, 8, 8, 14, 14],
            &[9, 9, 15],
            &[10, 10, 15],
        ],
    )
    .unwrap();
    let (p_w, q_w) = domino_correspondence(&w, 2);
    let (p_v, q_v) = domino_correspondence(&v, 2);
    assert_eq!(p_w, p_v);
    assert_eq!(q_w, q_w_expect);
    assert_eq!(q_v, q_v_expect);
    // The outside-window positional claims hold here; the single-label
    // shift claims apply to single-width windows only and are exercised
    // exhaustively at k = 1 by the verification suites.
    let pred = recording_effects(
        &w,
        &MoveLabel::D4 {
            k: 2,
            forward: true,
        },
        2,
    )
    .unwrap();
    match pred {
        gelfand_core::equivalence::QPrediction::Claims(claims) => {
            for (name, ok) in claims {
                if name.contains(".1") || name.contains(".2") {
                    assert!(ok, "claim {name} failed");
                }
            }
        }
        _ => panic!("expected structural claims"),
    }
}

/// The matching core-2, k=2 instance of the fifth relation, eighteen
/// dominoes long.
#[test]
fn block5_recording_pair_core2() {
    let w = sp("4,3,2,-5,9,8,7,6,-11,-10,16,15,14,13,12,-18,-17,1");
    let v = sp("4,3,2,-5,9,8,7,6,-16,-11,-10,15,14,13,12,-18,-17,1");
    let moves = plactic_moves(&w, 2);
    assert!(
        moves.contains(&(
            MoveLabel::D5 {
                k: 2,
                forward: true
            },
            v.clone()
        )),
        "expected the k=2 extended block move from {w}"
    );
    let q_w_expect = DominoTableau::from_grid(
        2,
        &[
            &[0, 0, 1, 1, 5, 5, 11, 11],
            &[0, 2, 2, 6, 6, 12, 12],
            &[3, 3, 7, 7, 13, 13],
            &[4, 8, 8, 14, 14],
            &[4, 10, 15, 15],
            &[9, 10, 18, 18],
            &[9, 17],
            &[16, 17],
            &[16],
        ],
    )
    .unwrap();
    let q_v_expect = DominoTableau::from_grid(
        2,
        &[
            &[0, 0, 1, 1, 5, 5, 12, 12],
            &[0, 2, 2, 6, 6, 13, 13],
            &[3, 3, 7, 7, 14, 14],
            &[4, 8, 8, 15, 15],
            &[4, 10, 11, 18],
            &[9, 10, 11, 18],
            &[9, 17],
            &[16, 17],
            &[16],
        ],
    )
    .unwrap();
    let (p_w, q_w) = domino_correspondence(&w, 2);
    let (p_v, q_v) = domino_correspondence(&v, 2);
    assert_eq!(p_w, p_v);
    assert_eq!(q_w, q_w_expect);
    assert_eq!(q_v, q_v_expect);
    let pred = recording_effects(
        &w,
        &MoveLabel::D5 {
            k: 2,
            forward: true,
        },
        2,
    )
    .unwrap();
    assert!(pred.failures(&q_v).is_empty());
}

#[test]
fn bitableau_correspondence_injective_rank4() {
    let mut seen = std::collections::BTreeSet::new();
    for w in gelfand_core::coxeter::group_elements(4, CoxType::B) {
        let pair = bitableau_correspondence(&w);
        assert!(seen.insert(pair), "pair repeated at {w}");
    }
    assert_eq!(seen.len(), 384);
}

#[test]
fn classification_invariants_rank4() {
    for cox in [CoxType::B, CoxType::D] {
        let rep = classification_cases_agree(4, cox);
        assert!(rep.passed(), "{:?}", rep.failures);
        let rep = conjugation_dichotomy(4, cox);
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}

#[test]
fn embedding_images_are_injective_rank4() {
    use gelfand_core::coxeter::{involutions, iota_asc, iota_des};
    let invs = involutions(4);
    let asc: std::collections::BTreeSet<_> = invs.iter().map(|w| iota_asc(w).unwrap()).collect();
    let des: std::collections::BTreeSet<_> = invs.iter().map(|w| iota_des(w).unwrap()).collect();
    assert_eq!(asc.len(), invs.len());
    assert_eq!(des.len(), invs.len());
}

/// Every emitted move is reversible: the neighbor emits a move straight
/// back. Scans the whole rank-3 group for both relation families and the
/// rank-4 group for the plactic family at core 0.
#[test]
fn moves_are_involutions() {
    use gelfand_core::coxeter::group_elements;
    use gelfand_core::equivalence::{admissible_moves, rbs_relation, cbs_relation};
    for (rank, cores) in [(3usize, vec![0usize, 1, 2]), (4, vec![0])] {
        for core in cores {
            for w in group_elements(rank, CoxType::B) {
                for (label, v) in plactic_moves(&w, core) {
                    let back = plactic_moves(&v, core);
                    assert!(
                        back.iter().any(|(_, u)| u == &w),
                        "move {label} from {w} to {v} has no reverse"
                    );
                }
            }
        }
    }
    for w in gelfand_core::coxeter::group_elements(3, CoxType::B) {
        for (label, v) in admissible_moves(&w) {
            assert!(
                admissible_moves(&v).iter().any(|(_, u)| u == &w),
                "admissible move {label} from {w} has no reverse"
            );
        }
    }
    // The closed-form involution relations square to the identity.
    for y in gelfand_core::coxeter::involutions(4)
        .into_iter()
        .filter(|w| w.oneline().iter().all(|&v| v > 0))
    {
        let yset = y.plus_part().unwrap();
        for i in 2..4u32 {
            let z = rbs_relation(&yset, i).unwrap();
            assert_eq!(rbs_relation(&z, i).unwrap(), yset);
            let z = cbs_relation(&yset, i).unwrap();
            assert_eq!(cbs_relation(&z, i).unwrap(), yset);
        }
    }
}

/// The recording tableau equals the insertion tableau of the inverse over
/// the whole rank-4 group at every core: the classical symmetry used as an
/// implementation oracle.
#[test]
fn recording_symmetry_rank4() {
    use gelfand_core::coxeter::group_elements;
    for core in 0..=2 {
        for w in group_elements(4, CoxType::B) {
            let (_, q) = domino_correspondence(&w, core);
            let (p_inv, _) = domino_correspondence(&w.inverse(), core);
            assert_eq!(q, p_inv, "at {w}, core {core}");
        }
    }
}

/// Every molecule sits inside a single cell (bidirected edges are a subset
/// of the effective directed ones).
#[test]
fn molecules_refine_cells() {
    use gelfand_core::coxeter::Model;
    use gelfand_core::wgraph::build_graph;
    for cox in [CoxType::B, CoxType::D] {
        for rank in 1..=3 {
            if cox == CoxType::D && rank < 2 {
                continue;
            }
            for model in [Model::M, Model::N] {
                let g = build_graph(rank, cox, model).unwrap();
                let cells = g.cells();
                let cell_of = |v: usize| cells.iter().position(|c| c.contains(&v)).unwrap();
                for molecule in g.molecules() {
                    let home = cell_of(molecule[0]);
                    assert!(
                        molecule.iter().all(|&v| cell_of(v) == home),
                        "molecule {molecule:?} spans cells ({cox:?} rank {rank} {model})"
                    );
                }
            }
        }
    }
}
