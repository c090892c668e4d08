//! Hardness gadgets: rewriting a selection game on SAT-V as an interdiction
//! or adjustable game on SAT-V over a pseudo-complement formula with
//! cheat-detection variables.

use std::sync::Arc;

use nps_catalog::payload::CnfFormula;
use nps_core::{Embedding, InstanceBundle, SubsetMask};
use nps_games::{AdjustableGame, BudgetMode, GameError, InterdictionGame, SelectionGame};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error("gadget requires a sat-v base, got `{0}`")]
    NotSatV(String),
    #[error("interdiction gadget requires at least 2 moves, got {0}")]
    KTooSmall(usize),
    #[error("adjustable gadget requires an odd move count, got {0}")]
    EvenMoveCount(usize),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Core(#[from] nps_core::CoreError),
}

/// The padded move structure shared by both gadgets: every part brought to a
/// common size `n` with dummy variables, variables renumbered part-major.
struct PaddedParts {
    part_size: usize,
    /// remapped clauses over part-major u-variable numbering (1-based)
    clauses: Vec<Vec<i32>>,
    /// embedding of the original variables into the u-block
    embedding_table: Vec<usize>,
}

fn pad_parts(game: &SelectionGame) -> Result<PaddedParts, GadgetError> {
    if game.base.spec().name() != "sat-v" {
        return Err(GadgetError::NotSatV(game.base.spec().name().to_string()));
    }
    let cnf: &CnfFormula = game.base.payload_as().map_err(nps_core::CoreError::from)?;
    let n = game
        .parts()
        .iter()
        .map(SubsetMask::count)
        .max()
        .unwrap_or(0);
    let mut where_is = vec![(0usize, 0usize); cnf.num_vars];
    for (i, part) in game.parts().iter().enumerate() {
        for (j, v) in part.ids().into_iter().enumerate() {
            where_is[v] = (i, j);
        }
    }
    // u_{ij} is ψ variable (i*n + j + 1), 1-based, part-major
    let u_var = |i: usize, j: usize| (i * n + j + 1) as i32;
    let clauses = cnf
        .clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|&lit| {
                    let (i, j) = where_is[lit.unsigned_abs() as usize - 1];
                    u_var(i, j) * lit.signum()
                })
                .collect()
        })
        .collect();
    let embedding_table = (0..cnf.num_vars)
        .map(|v| {
            let (i, j) = where_is[v];
            i * n + j
        })
        .collect();
    Ok(PaddedParts {
        part_size: n,
        clauses,
        embedding_table,
    })
}

/// Output of a gadget build: the game plus the mapping from original
/// variables into the gadget's u-block.
pub struct GadgetOutput<G> {
    pub game: G,
    pub embedding: Embedding,
}

/// Builds the interdiction-game formula over pseudo-complements with two
/// cheat-detection variables, nested sets `C_i = Û_i ∪ Ŵ_i`, and budgets
/// `Γ_P = n(k-1)/2, Γ_B = n(k-1)` (for odd k; `Γ_P = n(k-2)/2` when the
/// blocker opens).
pub fn gadget_selection_to_interdiction(
    game: &SelectionGame,
) -> Result<GadgetOutput<InterdictionGame>, GadgetError> {
    let k = game.moves();
    if k < 2 {
        return Err(GadgetError::KTooSmall(k));
    }
    let padded = pad_parts(game)?;
    let n = padded.part_size;
    let odd = k % 2 == 1;
    // 1-based token-move indices for each role
    let protector_moves: Vec<usize> = (1..k).filter(|i| (i % 2 == 1) == odd).collect();
    let blocker_moves: Vec<usize> = (1..k).filter(|i| (i % 2 == 1) != odd).collect();

    let u_var = |i: usize, j: usize| (i * n + j + 1) as i32; // i, j 0-based
    let w_var = |i: usize, j: usize| (k * n + i * n + j + 1) as i32;
    let mut next = 2 * k * n + 1;
    let mut s_vars: Vec<Vec<i32>> = Vec::new(); // indexed like blocker_moves
    for _ in &blocker_moves {
        s_vars.push((0..n).map(|j| (next + j) as i32).collect());
        next += n;
    }
    let mut t_vars: Vec<Vec<i32>> = Vec::new();
    for _ in &protector_moves {
        t_vars.push((0..n).map(|j| (next + j) as i32).collect());
        next += n;
    }
    let s = next as i32;
    let t = (next + 1) as i32;
    let num_vars = next + 1;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    // original clauses may always be escaped through a detected cheat
    for c in &padded.clauses {
        let mut c = c.clone();
        c.push(s);
        c.push(t);
        clauses.push(c);
    }
    // one of each pseudo-complement pair for every token move
    for &i in &protector_moves {
        for j in 0..n {
            clauses.push(vec![u_var(i - 1, j), w_var(i - 1, j), s]);
        }
    }
    for &i in &blocker_moves {
        for j in 0..n {
            clauses.push(vec![u_var(i - 1, j), w_var(i - 1, j), s, t]);
        }
    }
    // cheat markers require both elements of their pair
    for (b, &i) in blocker_moves.iter().enumerate() {
        for j in 0..n {
            clauses.push(vec![-s_vars[b][j], u_var(i - 1, j)]);
            clauses.push(vec![-s_vars[b][j], w_var(i - 1, j)]);
        }
    }
    for (p, &i) in protector_moves.iter().enumerate() {
        for j in 0..n {
            clauses.push(vec![-t_vars[p][j], u_var(i - 1, j)]);
            clauses.push(vec![-t_vars[p][j], w_var(i - 1, j)]);
        }
    }
    // the cheat flags need a marker to stand on
    let mut t_clause = vec![-t];
    t_clause.extend(t_vars.iter().flatten().copied());
    clauses.push(t_clause);
    let mut s_clause = vec![-s];
    s_clause.extend(s_vars.iter().flatten().copied());
    clauses.push(s_clause);
    // honest assignments respect the pseudo-complement pairing everywhere
    for i in 0..k {
        for j in 0..n {
            clauses.push(vec![u_var(i, j), w_var(i, j), s, t]);
            clauses.push(vec![-u_var(i, j), -w_var(i, j), s, t]);
        }
    }

    let base = InstanceBundle::new(
        nps_catalog::find("sat-v").expect("catalog"),
        Arc::new(CnfFormula { num_vars, clauses }),
    )
    .map_err(nps_core::CoreError::from)?;
    // nested sets: cumulative u and w blocks of the first i moves
    let mut nested = Vec::new();
    let mut acc = SubsetMask::empty(num_vars);
    for i in 0..k - 1 {
        for j in 0..n {
            acc.insert((u_var(i, j) - 1) as usize);
            acc.insert((w_var(i, j) - 1) as usize);
        }
        nested.push(acc.clone());
    }
    let budget_protector = if odd {
        n * (k - 1) / 2
    } else {
        n * (k - 2) / 2
    } as u32;
    let budget_blocker = (n * (k - 1)) as u32;
    let game = InterdictionGame::new(
        base,
        nested,
        budget_protector,
        budget_blocker,
        BudgetMode::Global,
    )?;
    let embedding = Embedding::new(padded.embedding_table, num_vars)?;
    Ok(GadgetOutput { game, embedding })
}

/// Builds the adjustable-game formula: pseudo-complements everywhere, cheat
/// markers on the adversary's (even) selection-move blocks, one cheat flag,
/// stage sets pairing each blocked move with the following selection move,
/// helpers in the last stage, and budget `Γ = n(k-1)` over `k` stages.
pub fn gadget_selection_to_adjustable(
    game: &SelectionGame,
) -> Result<GadgetOutput<AdjustableGame>, GadgetError> {
    let q = game.moves();
    if q % 2 == 0 {
        return Err(GadgetError::EvenMoveCount(q));
    }
    let stages = (q + 1) / 2;
    let padded = pad_parts(game)?;
    let n = padded.part_size;

    let u_var = |i: usize, j: usize| (i * n + j + 1) as i32;
    let w_var = |i: usize, j: usize| (q * n + i * n + j + 1) as i32;
    let even_moves: Vec<usize> = (2..q).step_by(2).collect(); // 1-based adversary moves
    let mut next = 2 * q * n + 1;
    let mut s_vars: Vec<Vec<i32>> = Vec::new();
    for _ in &even_moves {
        s_vars.push((0..n).map(|j| (next + j) as i32).collect());
        next += n;
    }
    let s = next as i32;
    let num_vars = next;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for c in &padded.clauses {
        let mut c = c.clone();
        c.push(s);
        clauses.push(c);
    }
    for (b, &i) in even_moves.iter().enumerate() {
        for j in 0..n {
            clauses.push(vec![-s_vars[b][j], u_var(i - 1, j)]);
            clauses.push(vec![-s_vars[b][j], w_var(i - 1, j)]);
        }
    }
    let mut s_clause = vec![-s];
    s_clause.extend(s_vars.iter().flatten().copied());
    clauses.push(s_clause);
    for i in 0..q {
        for j in 0..n {
            clauses.push(vec![u_var(i, j), w_var(i, j), s]);
            clauses.push(vec![-u_var(i, j), -w_var(i, j), s]);
        }
    }

    let base = InstanceBundle::new(
        nps_catalog::find("sat-v").expect("catalog"),
        Arc::new(CnfFormula { num_vars, clauses }),
    )
    .map_err(nps_core::CoreError::from)?;

    let pair_block = |i: usize| {
        // all u and w elements of 1-based move i
        let mut m = SubsetMask::empty(num_vars);
        for j in 0..n {
            m.insert((u_var(i - 1, j) - 1) as usize);
            m.insert((w_var(i - 1, j) - 1) as usize);
        }
        m
    };
    let mut stage_sets = vec![pair_block(1)];
    for stage in 2..=stages {
        let mut m = pair_block(2 * stage - 2).union(&pair_block(2 * stage - 1));
        if stage == stages {
            // helpers are selectable in the final stage
            for v in (2 * q * n)..num_vars {
                m.insert(v);
            }
        }
        stage_sets.push(m);
    }
    if stages == 1 {
        for v in (2 * q * n)..num_vars {
            stage_sets[0].insert(v);
        }
    }
    let mut vulnerable = SubsetMask::empty(num_vars);
    for stage in 2..=stages {
        vulnerable = vulnerable.union(&pair_block(2 * stage - 2));
    }
    let budget = (n * (stages - 1)) as u32;
    let game = AdjustableGame::new(base, stage_sets, vulnerable, budget)?;
    let embedding = Embedding::new(padded.embedding_table, num_vars)?;
    Ok(GadgetOutput { game, embedding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_core::Cap;

    fn selection(num_vars: usize, clauses: &[&[i32]], parts: &[&[usize]]) -> SelectionGame {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        let base = InstanceBundle::new(nps_catalog::find("sat-v").unwrap(), Arc::new(cnf)).unwrap();
        let parts = parts
            .iter()
            .map(|ids| SubsetMask::from_ids(num_vars, ids).unwrap())
            .collect();
        SelectionGame::new(base, parts).unwrap()
    }

    #[test]
    fn interdiction_gadget_counts_for_three_moves() {
        // k=3, n=1: 3 u + 3 w + 1 s-marker + 1 t-marker + s + t = 10
        let game = selection(3, &[&[1, 2, 3]], &[&[0], &[1], &[2]]);
        let out = gadget_selection_to_interdiction(&game).unwrap();
        assert_eq!(out.game.base.width(), 10);
        assert_eq!(out.game.budget_protector, 1);
        assert_eq!(out.game.budget_blocker, 2);
        assert_eq!(out.game.moves(), 3);
    }

    #[test]
    fn interdiction_gadget_budgets_for_n_two() {
        let game = selection(6, &[&[1, 4]], &[&[0, 1], &[2, 3], &[4, 5]]);
        let out = gadget_selection_to_interdiction(&game).unwrap();
        assert_eq!(out.game.budget_protector, 2);
        assert_eq!(out.game.budget_blocker, 4);
        assert_eq!(out.game.base.width(), 18);
    }

    #[test]
    fn interdiction_gadget_preserves_winner_on_samples() {
        let cap = Cap::default();
        for (clauses, expect) in [
            (vec![vec![1, 2, 3]], true),
            (vec![vec![1], vec![-1]], false),
            (vec![vec![-2]], false), // responder controls x2
            (vec![vec![1, -2]], true),
        ] {
            let slices: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let game = selection(3, &slices, &[&[0], &[1], &[2]]);
            let source = game.solve(cap).unwrap();
            assert_eq!(source.first_player_wins, expect, "source {clauses:?}");
            let lifted = gadget_selection_to_interdiction(&game).unwrap();
            let target = lifted.game.solve(cap).unwrap();
            assert_eq!(
                source.first_player_wins, target.first_player_wins,
                "{clauses:?}"
            );
        }
    }

    #[test]
    fn interdiction_gadget_even_move_count() {
        let cap = Cap::default();
        for clauses in [
            vec![vec![1, 2]],
            vec![vec![1], vec![-1]],
            vec![vec![-1, -2]],
        ] {
            let slices: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let game = selection(2, &slices, &[&[0], &[1]]);
            let source = game.solve(cap).unwrap();
            let lifted = gadget_selection_to_interdiction(&game).unwrap();
            assert_eq!(lifted.game.budget_protector, 0);
            let target = lifted.game.solve(cap).unwrap();
            assert_eq!(
                source.first_player_wins, target.first_player_wins,
                "{clauses:?}"
            );
        }
    }

    #[test]
    fn adjustable_gadget_counts_for_three_moves() {
        // q=3 (k=2), n=1: 3 u + 3 w + 1 marker + s = 8
        let game = selection(3, &[&[1, 2, 3]], &[&[0], &[1], &[2]]);
        let out = gadget_selection_to_adjustable(&game).unwrap();
        assert_eq!(out.game.base.width(), 8);
        assert_eq!(out.game.budget, 1);
        assert_eq!(out.game.stage_count(), 2);
        // vulnerable set is the second move's pair block
        assert_eq!(out.game.vulnerable.ids(), vec![1, 4]);
    }

    #[test]
    fn adjustable_gadget_preserves_winner_on_samples() {
        let cap = Cap::default();
        for clauses in [
            vec![vec![1, 2, 3]],
            vec![vec![1], vec![-1]],
            vec![vec![-2]],
            vec![vec![2, -3]],
        ] {
            let slices: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let game = selection(3, &slices, &[&[0], &[1], &[2]]);
            let source = game.solve(cap).unwrap();
            let lifted = gadget_selection_to_adjustable(&game).unwrap();
            let target = lifted.game.solve(cap).unwrap();
            assert_eq!(
                source.first_player_wins, target.first_player_wins,
                "{clauses:?}"
            );
        }
    }

    #[test]
    fn gadgets_reject_bad_inputs() {
        let game = selection(1, &[], &[&[0]]);
        assert!(matches!(
            gadget_selection_to_interdiction(&game),
            Err(GadgetError::KTooSmall(1))
        ));
        let even = selection(2, &[], &[&[0], &[1]]);
        assert!(matches!(
            gadget_selection_to_adjustable(&even),
            Err(GadgetError::EvenMoveCount(2))
        ));
    }

    #[test]
    fn dummy_padding_is_neutral() {
        let cap = Cap::default();
        // unequal parts: {x1,x2} vs {x3}; padding must not change the verdict
        let game = selection(3, &[&[1, -3]], &[&[0, 1], &[2]]);
        let source = game.solve(cap).unwrap();
        let lifted = gadget_selection_to_interdiction(&game).unwrap();
        let target = lifted.game.solve(cap).unwrap();
        assert_eq!(source.first_player_wins, target.first_player_wins);
    }
}
