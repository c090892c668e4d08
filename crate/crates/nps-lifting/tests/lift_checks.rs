//! Winner preservation for the three lift operators over real reductions,
//! plus pair serialization and verification reports.

use std::sync::Arc;

use nps_catalog::payload::CnfFormula;
use nps_core::{Cap, InstanceBundle, SubsetMask};
use nps_games::json::GameDoc;
use nps_games::{AdjustableGame, BudgetMode, InterdictionGame, SelectionGame};
use nps_lifting::{
    decode_pair, encode_pair, lift_adjustable, lift_interdiction, lift_selection, verify_lift,
    LiftedGamePair,
};
use nps_reductions::generate::Rng;

fn three_sat_base(rng: &mut Rng) -> InstanceBundle {
    let cnf = nps_reductions::generate::random_cnf(rng, 2, 1, 3);
    InstanceBundle::new(nps_catalog::find("3sat-l").unwrap(), Arc::new(cnf)).unwrap()
}

fn random_partition(rng: &mut Rng, width: usize, parts: usize) -> Vec<SubsetMask> {
    let mut masks = vec![SubsetMask::empty(width); parts];
    for id in 0..width {
        masks[rng.below(parts)].insert(id);
    }
    masks
}

fn random_mask(rng: &mut Rng, width: usize) -> SubsetMask {
    SubsetMask::from_word(width, rng.next_u64() & ((1u64 << width) - 1))
}

#[test]
fn selection_lift_preserves_winners() {
    let cap = Cap::default();
    let red = nps_reductions::three_sat_l_to_vertex_cover();
    let mut rng = Rng::new(0x11f7);
    let mut checked = 0;
    while checked < 12 {
        let base = three_sat_base(&mut rng);
        let k = rng.range(1, 3);
        let parts = random_partition(&mut rng, base.width(), k);
        let game = SelectionGame::new(base, parts).unwrap();
        let Ok((lifted, _)) = lift_selection(&red, &game, cap) else {
            continue;
        };
        let source = game.solve(cap).unwrap();
        let target = lifted.solve(cap).unwrap();
        assert_eq!(source.first_player_wins, target.first_player_wins);
        checked += 1;
    }
}

#[test]
fn identity_lift_is_the_same_game() {
    let cap = Cap::default();
    let mut rng = Rng::new(5);
    let base = three_sat_base(&mut rng);
    let red = nps_core::SeReduction::identity(base.spec().clone());
    let parts = random_partition(&mut rng, base.width(), 2);
    let game = SelectionGame::new(base, parts).unwrap();
    let (lifted, f) = lift_selection(&red, &game, cap).unwrap();
    assert_eq!(lifted.parts(), game.parts());
    assert_eq!(f.table(), (0..game.base.width()).collect::<Vec<_>>());
}

#[test]
fn single_move_lift_reduces_to_feasibility() {
    let cap = Cap::default();
    let red = nps_reductions::vc_to_hitting_set();
    let mut rng = Rng::new(0xfee);
    for _ in 0..6 {
        let inst = nps_reductions::generate::random_source_for_edge(
            nps_reductions::edges()
                .iter()
                .find(|e| e.name() == "vertex-cover->hitting-set")
                .unwrap(),
            &mut rng,
        );
        let game = SelectionGame::new(inst.clone(), vec![SubsetMask::full(inst.width())]).unwrap();
        let (lifted, _) = lift_selection(&red, &game, cap).unwrap();
        let source = game.solve(cap).unwrap();
        let target = lifted.solve(cap).unwrap();
        assert_eq!(source.first_player_wins, target.first_player_wins);
        // one move means plain feasibility on both sides
        let feasible = !nps_core::enumerate_solutions(&inst, cap)
            .unwrap()
            .is_empty();
        assert_eq!(source.first_player_wins, feasible);
    }
}

#[test]
fn interdiction_lift_preserves_winners() {
    let cap = Cap::default();
    let red = nps_reductions::three_sat_l_to_independent_set();
    let mut rng = Rng::new(0x1e1);
    let mut checked = 0;
    while checked < 12 {
        let base = three_sat_base(&mut rng);
        let width = base.width();
        let c1 = random_mask(&mut rng, width);
        let nested = if rng.chance(1, 2) {
            vec![c1]
        } else {
            let c2 = c1.union(&random_mask(&mut rng, width));
            vec![c1, c2]
        };
        let game = InterdictionGame::new(
            base,
            nested,
            rng.range(0, 2) as u32,
            rng.range(0, 3) as u32,
            BudgetMode::Global,
        )
        .unwrap();
        let Ok((lifted, _)) = lift_interdiction(&red, &game, cap) else {
            continue;
        };
        let source = game.solve(cap).unwrap();
        let target = lifted.solve(cap).unwrap();
        assert_eq!(source.first_player_wins, target.first_player_wins);
        checked += 1;
    }
}

#[test]
fn adjustable_lift_preserves_winners() {
    let cap = Cap::default();
    let red = nps_reductions::subset_sum_to_partition();
    let edge = nps_reductions::edges()
        .iter()
        .find(|e| e.name() == "subset-sum->partition")
        .unwrap();
    let mut rng = Rng::new(0xad1);
    let mut checked = 0;
    while checked < 12 {
        let base = nps_reductions::generate::random_source_for_edge(edge, &mut rng);
        if base.width() > 6 {
            continue;
        }
        let stage_count = rng.range(1, 3);
        let stages = random_partition(&mut rng, base.width(), stage_count);
        let vulnerable = random_mask(&mut rng, base.width());
        let game = AdjustableGame::new(base, stages, vulnerable, rng.range(0, 2) as u32).unwrap();
        let Ok((lifted, _)) = lift_adjustable(&red, &game, cap) else {
            continue;
        };
        let source = game.solve(cap).unwrap();
        let target = lifted.solve(cap).unwrap();
        assert_eq!(source.first_player_wins, target.first_player_wins);
        checked += 1;
    }
}

#[test]
fn lift_rejects_mismatched_sources() {
    let cap = Cap::default();
    let mut rng = Rng::new(2);
    let base = three_sat_base(&mut rng);
    let game = SelectionGame::new(base.clone(), vec![SubsetMask::full(base.width())]).unwrap();
    let red = nps_reductions::vc_to_hitting_set();
    assert!(matches!(
        lift_selection(&red, &game, cap),
        Err(nps_lifting::LiftError::SpecMismatch { .. })
    ));
}

#[test]
fn verify_lift_reports_agreement_and_legal_mimicking() {
    let cap = Cap::default();
    let red = nps_reductions::three_sat_l_to_vertex_cover();
    let mut rng = Rng::new(0xbeef);
    let base = three_sat_base(&mut rng);
    let parts = random_partition(&mut rng, base.width(), 2);
    let game = SelectionGame::new(base, parts).unwrap();
    let (lifted, f) = lift_selection(&red, &game, cap).unwrap();
    let pair = LiftedGamePair {
        source: GameDoc::Selection(game),
        target: GameDoc::Selection(lifted),
        embedding: f,
        provenance: "lift:3sat-l->vertex-cover".into(),
    };
    let report = verify_lift(&pair, cap).unwrap();
    assert!(report.verdicts_agree);
    assert!(report.all_moves_legal);

    // round-trip the pair document
    let doc = encode_pair(&pair).unwrap();
    let back = decode_pair(&doc).unwrap();
    let report2 = verify_lift(&back, cap).unwrap();
    assert_eq!(report.verdicts_agree, report2.verdicts_agree);
    assert_eq!(encode_pair(&back).unwrap(), doc);
}

#[test]
fn verify_lift_flags_corrupted_pairs() {
    let cap = Cap::default();
    // satisfiable one-move source: the first player wins
    let cnf = CnfFormula {
        num_vars: 1,
        clauses: vec![vec![1, 1, 1]],
    };
    let base = InstanceBundle::new(nps_catalog::find("3sat-l").unwrap(), Arc::new(cnf)).unwrap();
    let game = SelectionGame::new(base.clone(), vec![SubsetMask::full(2)]).unwrap();
    // a "lift" that pairs it with an unsatisfiable game of the same width
    let broken_cnf = CnfFormula {
        num_vars: 2,
        clauses: vec![vec![1], vec![-1]],
    };
    let broken_base =
        InstanceBundle::new(nps_catalog::find("sat-v").unwrap(), Arc::new(broken_cnf)).unwrap();
    let target = SelectionGame::new(broken_base, vec![SubsetMask::full(2)]).unwrap();
    let pair = LiftedGamePair {
        source: GameDoc::Selection(game),
        target: GameDoc::Selection(target),
        embedding: nps_core::Embedding::identity(2),
        provenance: "corrupted".into(),
    };
    let report = verify_lift(&pair, cap).unwrap();
    assert!(!report.verdicts_agree);
}
