//! The k-move adversarial selection game: players alternately pick subsets
//! of their part of a partitioned universe; with an odd number of moves the
//! first player tries to complete a solution, with an even number to make
//! completion impossible.

use std::collections::HashMap;

use nps_core::{Cap, InstanceBundle, SubsetMask};

use crate::verdict::{GameError, GameVerdict, StrategyTree};

#[derive(Clone, Debug)]
pub struct SelectionGame {
    pub base: InstanceBundle,
    parts: Vec<SubsetMask>,
}

impl SelectionGame {
    pub fn new(base: InstanceBundle, parts: Vec<SubsetMask>) -> Result<Self, GameError> {
        if parts.is_empty() {
            return Err(GameError::MalformedPartition("no parts".into()));
        }
        let width = base.width();
        let mut seen = SubsetMask::empty(width);
        for (i, p) in parts.iter().enumerate() {
            if p.width() != width {
                return Err(GameError::MalformedPartition(format!(
                    "part {i} has width {} instead of {width}",
                    p.width()
                )));
            }
            if !seen.is_disjoint(p) {
                return Err(GameError::MalformedPartition(format!("part {i} overlaps")));
            }
            seen = seen.union(p);
        }
        if seen != SubsetMask::full(width) {
            return Err(GameError::MalformedPartition(
                "parts do not cover the universe".into(),
            ));
        }
        Ok(SelectionGame { base, parts })
    }

    pub fn moves(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[SubsetMask] {
        &self.parts
    }

    pub fn solve(&self, cap: Cap) -> Result<GameVerdict, GameError> {
        self.solve_with(cap, true)
    }

    /// `memoize = false` forces plain game-tree evaluation; verdicts must
    /// agree with the memoized run.
    pub fn solve_with(&self, cap: Cap, memoize: bool) -> Result<GameVerdict, GameError> {
        cap.admit(self.base.width())?;
        let mut state = Solver {
            game: self,
            memo: HashMap::new(),
            memoize,
            nodes: 0,
        };
        let first_player_wins = state.eval(0, SubsetMask::empty(self.base.width()));
        let strategy = state.extract(0, SubsetMask::empty(self.base.width()), first_player_wins);
        Ok(GameVerdict {
            first_player_wins,
            strategy,
            nodes_explored: state.nodes,
        })
    }

    /// Replays an extracted strategy against every opponent line and checks
    /// that each leaf realizes the claimed outcome.
    pub fn replay(&self, verdict: &GameVerdict) -> bool {
        self.replay_node(
            &verdict.strategy,
            0,
            &SubsetMask::empty(self.base.width()),
            verdict.first_player_wins,
        )
    }

    fn replay_node(
        &self,
        node: &StrategyTree,
        move_index: usize,
        acc: &SubsetMask,
        outcome: bool,
    ) -> bool {
        match node {
            StrategyTree::Leaf { .. } => {
                move_index == self.moves() && self.leaf_value(acc) == outcome
            }
            StrategyTree::Chosen {
                move_index: mi,
                mask,
                next,
            } => {
                *mi == move_index
                    && mask.is_subset_of(&self.parts[move_index])
                    && self.replay_node(next, move_index + 1, &acc.union(mask), outcome)
            }
            StrategyTree::Branch {
                move_index: mi,
                arms,
            } => {
                if *mi != move_index {
                    return false;
                }
                // every legal opponent move must be answered
                let expected = 1usize << self.parts[move_index].count();
                arms.len() == expected
                    && arms.iter().all(|(mask, sub)| {
                        mask.is_subset_of(&self.parts[move_index])
                            && self.replay_node(sub, move_index + 1, &acc.union(mask), outcome)
                    })
            }
        }
    }

    fn leaf_value(&self, acc: &SubsetMask) -> bool {
        let member = self.base.spec().verify(self.base.payload(), acc);
        if self.moves() % 2 == 1 {
            member
        } else {
            !member
        }
    }
}

struct Solver<'a> {
    game: &'a SelectionGame,
    memo: HashMap<(usize, SubsetMask), bool>,
    memoize: bool,
    nodes: u64,
}

impl Solver<'_> {
    /// Value of the remaining game for the first player.
    fn eval(&mut self, move_index: usize, acc: SubsetMask) -> bool {
        self.nodes += 1;
        if move_index == self.game.moves() {
            return self.game.leaf_value(&acc);
        }
        let key = (move_index, acc.clone());
        if self.memoize {
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
        }
        let first_player_moves = move_index % 2 == 0;
        let mut result = !first_player_moves;
        let subsets = self.game.parts[move_index].subsets();
        for mask in subsets {
            let value = self.eval(move_index + 1, acc.union(&mask));
            if first_player_moves && value {
                result = true;
                break;
            }
            if !first_player_moves && !value {
                result = false;
                break;
            }
        }
        if self.memoize {
            self.memo.insert(key, result);
        }
        result
    }

    fn extract(&mut self, move_index: usize, acc: SubsetMask, outcome: bool) -> StrategyTree {
        if move_index == self.game.moves() {
            return StrategyTree::Leaf { witness: None };
        }
        let first_player_moves = move_index % 2 == 0;
        let winner_moves = first_player_moves == outcome;
        if winner_moves {
            for mask in self.game.parts[move_index].subsets() {
                if self.eval(move_index + 1, acc.union(&mask)) == outcome {
                    let next = self.extract(move_index + 1, acc.union(&mask), outcome);
                    return StrategyTree::Chosen {
                        move_index,
                        mask,
                        next: Box::new(next),
                    };
                }
            }
            unreachable!("winner has a move realizing the outcome");
        }
        let arms = self.game.parts[move_index]
            .subsets()
            .into_iter()
            .map(|mask| {
                let sub = self.extract(move_index + 1, acc.union(&mask), outcome);
                (mask, sub)
            })
            .collect();
        StrategyTree::Branch { move_index, arms }
    }
}
