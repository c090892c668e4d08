//! Interdiction: the plain blocker problem, its cost variant, and the
//! k-move protection-interdiction game over nested accessible sets.
//!
//! The k-move game evaluates the quantified formula literally: budgets are
//! checked inside the final condition (global mode), so a player exceeding
//! their budget simply hands the win to the opponent at the leaf.

use std::collections::HashMap;

use nps_core::{enumerate_solutions, Cap, InstanceBundle, SolutionSet, SubsetMask};

use crate::verdict::{GameError, GameVerdict, StrategyTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetMode {
    /// Budgets bound the total number of tokens placed over the whole game.
    Global,
    /// Budgets bound each single move's placement instead.
    Local,
}

#[derive(Clone, Debug)]
pub struct InterdictionGame {
    pub base: InstanceBundle,
    nested: Vec<SubsetMask>,
    pub budget_protector: u32,
    pub budget_blocker: u32,
    pub mode: BudgetMode,
}

impl InterdictionGame {
    /// `nested` holds the accessible sets for the k-1 token moves.
    pub fn new(
        base: InstanceBundle,
        nested: Vec<SubsetMask>,
        budget_protector: u32,
        budget_blocker: u32,
        mode: BudgetMode,
    ) -> Result<Self, GameError> {
        if nested.is_empty() {
            return Err(GameError::MalformedNesting("k must be at least 2".into()));
        }
        let width = base.width();
        for (i, c) in nested.iter().enumerate() {
            if c.width() != width {
                return Err(GameError::MalformedNesting(format!(
                    "accessible set {i} has width {} instead of {width}",
                    c.width()
                )));
            }
            if i + 1 < nested.len() && !c.is_subset_of(&nested[i + 1]) {
                return Err(GameError::MalformedNesting(format!(
                    "accessible set {i} is not contained in set {}",
                    i + 1
                )));
            }
        }
        Ok(InterdictionGame {
            base,
            nested,
            budget_protector,
            budget_blocker,
            mode,
        })
    }

    pub fn moves(&self) -> usize {
        self.nested.len() + 1
    }

    pub fn nested(&self) -> &[SubsetMask] {
        &self.nested
    }

    /// Does the protector move at 0-based token move `i`?
    fn protector_moves_at(&self, i: usize) -> bool {
        if self.moves() % 2 == 1 {
            i % 2 == 0
        } else {
            i % 2 == 1
        }
    }

    /// The first player is the protector for odd k, the blocker for even k.
    fn first_player_is_protector(&self) -> bool {
        self.moves() % 2 == 1
    }

    pub fn solve(&self, cap: Cap) -> Result<GameVerdict, GameError> {
        self.solve_with(cap, true)
    }

    pub fn solve_with(&self, cap: Cap, memoize: bool) -> Result<GameVerdict, GameError> {
        cap.admit(self.base.width())?;
        let solutions = enumerate_solutions(&self.base, cap)?;
        let footprint_scope = self.nested.last().expect("nonempty").clone();
        let mut footprints: Vec<SubsetMask> = solutions
            .iter()
            .map(|s| s.intersect(&footprint_scope))
            .collect();
        footprints.sort();
        footprints.dedup();
        let mut solver = Solver {
            game: self,
            solutions,
            footprints,
            memo: HashMap::new(),
            memoize,
            nodes: 0,
        };
        let empty = SubsetMask::empty(self.base.width());
        let first_player_wins = solver.eval(0, empty.clone(), empty.clone());
        let strategy = solver.extract(0, empty.clone(), empty, first_player_wins);
        Ok(GameVerdict {
            first_player_wins,
            strategy,
            nodes_explored: solver.nodes,
        })
    }

    /// Replays a strategy tree against all opponent lines.
    pub fn replay(&self, verdict: &GameVerdict, cap: Cap) -> Result<bool, GameError> {
        let solutions = enumerate_solutions(&self.base, cap)?;
        let empty = SubsetMask::empty(self.base.width());
        Ok(self.replay_node(
            &verdict.strategy,
            0,
            &empty.clone(),
            &empty,
            verdict.first_player_wins,
            &solutions,
        ))
    }

    fn replay_node(
        &self,
        node: &StrategyTree,
        i: usize,
        phat: &SubsetMask,
        bhat: &SubsetMask,
        outcome: bool,
        solutions: &SolutionSet,
    ) -> bool {
        if i == self.moves() - 1 {
            let value = self.leaf_value_full(phat, bhat, solutions);
            let witness_ok = match node {
                StrategyTree::Leaf { witness: Some(w) } => {
                    solutions.contains(w) && (self.over_blocker_budget(bhat) || w.is_disjoint(bhat))
                }
                StrategyTree::Leaf { witness: None } => true,
                _ => return false,
            };
            return witness_ok && value == outcome;
        }
        let available = self.nested[i].difference(&phat.union(bhat));
        let legal = |mask: &SubsetMask| {
            mask.is_subset_of(&available)
                && match self.mode {
                    BudgetMode::Global => true,
                    BudgetMode::Local => {
                        let budget = if self.protector_moves_at(i) {
                            self.budget_protector
                        } else {
                            self.budget_blocker
                        };
                        mask.count() as u32 <= budget
                    }
                }
        };
        let advance = |mask: &SubsetMask| {
            if self.protector_moves_at(i) {
                (phat.union(mask), bhat.clone())
            } else {
                (phat.clone(), bhat.union(mask))
            }
        };
        match node {
            StrategyTree::Chosen {
                move_index,
                mask,
                next,
            } => {
                let (p, b) = advance(mask);
                *move_index == i
                    && legal(mask)
                    && self.replay_node(next, i + 1, &p, &b, outcome, solutions)
            }
            StrategyTree::Branch { move_index, arms } => {
                if *move_index != i {
                    return false;
                }
                let mut expected = 0usize;
                available.for_each_subset(|m| {
                    if legal(m) {
                        expected += 1;
                    }
                });
                arms.len() == expected
                    && arms.iter().all(|(mask, sub)| {
                        let (p, b) = advance(mask);
                        legal(mask) && self.replay_node(sub, i + 1, &p, &b, outcome, solutions)
                    })
            }
            StrategyTree::Leaf { .. } => false,
        }
    }

    fn over_blocker_budget(&self, bhat: &SubsetMask) -> bool {
        self.mode == BudgetMode::Global && bhat.count() as u32 > self.budget_blocker
    }

    fn leaf_value_full(
        &self,
        phat: &SubsetMask,
        bhat: &SubsetMask,
        solutions: &SolutionSet,
    ) -> bool {
        let exists_avoiding = solutions.iter().any(|s| s.is_disjoint(bhat));
        self.leaf_value_from(
            phat.count() as u32,
            bhat.count() as u32,
            !solutions.is_empty(),
            exists_avoiding,
        )
    }

    fn leaf_value_from(
        &self,
        protector_spent: u32,
        blocker_spent: u32,
        any_solution: bool,
        exists_avoiding: bool,
    ) -> bool {
        match (self.moves() % 2 == 1, self.mode) {
            // protector asks: exists S with the budget implication satisfied
            (true, BudgetMode::Global) => {
                if blocker_spent > self.budget_blocker {
                    any_solution
                } else {
                    protector_spent <= self.budget_protector && exists_avoiding
                }
            }
            (true, BudgetMode::Local) => exists_avoiding,
            // blocker asks: all S satisfy the dual implication
            (false, BudgetMode::Global) => {
                if protector_spent > self.budget_protector {
                    true
                } else {
                    blocker_spent <= self.budget_blocker && !exists_avoiding
                }
            }
            (false, BudgetMode::Local) => !exists_avoiding,
        }
    }
}

struct Solver<'a> {
    game: &'a InterdictionGame,
    solutions: SolutionSet,
    footprints: Vec<SubsetMask>,
    memo: HashMap<(usize, SubsetMask, SubsetMask), bool>,
    memoize: bool,
    nodes: u64,
}

impl Solver<'_> {
    fn leaf(&self, phat: &SubsetMask, bhat: &SubsetMask) -> bool {
        let scoped = bhat.intersect(self.game.nested.last().expect("nonempty"));
        let exists_avoiding = self.footprints.iter().any(|f| f.is_disjoint(&scoped));
        self.game.leaf_value_from(
            phat.count() as u32,
            bhat.count() as u32,
            !self.solutions.is_empty(),
            exists_avoiding,
        )
    }

    fn moves_at(&self, i: usize, phat: &SubsetMask, bhat: &SubsetMask) -> Vec<SubsetMask> {
        let available = self.game.nested[i].difference(&phat.union(bhat));
        let mut out = Vec::new();
        let budget = match self.game.mode {
            BudgetMode::Global => None,
            BudgetMode::Local => Some(if self.game.protector_moves_at(i) {
                self.game.budget_protector
            } else {
                self.game.budget_blocker
            }),
        };
        available.for_each_subset(|m| {
            if budget.map_or(true, |b| m.count() as u32 <= b) {
                out.push(m.clone());
            }
        });
        out
    }

    fn eval(&mut self, i: usize, phat: SubsetMask, bhat: SubsetMask) -> bool {
        self.nodes += 1;
        if i == self.game.moves() - 1 {
            return self.leaf(&phat, &bhat);
        }
        let key = (i, phat.clone(), bhat.clone());
        if self.memoize {
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
        }
        let protector_turn = self.game.protector_moves_at(i);
        let existential = protector_turn == self.game.first_player_is_protector();
        let mut result = !existential;
        for mask in self.moves_at(i, &phat, &bhat) {
            let (p, b) = if protector_turn {
                (phat.union(&mask), bhat.clone())
            } else {
                (phat.clone(), bhat.union(&mask))
            };
            let value = self.eval(i + 1, p, b);
            if existential && value {
                result = true;
                break;
            }
            if !existential && !value {
                result = false;
                break;
            }
        }
        if self.memoize {
            self.memo.insert(key, result);
        }
        result
    }

    fn extract(
        &mut self,
        i: usize,
        phat: SubsetMask,
        bhat: SubsetMask,
        outcome: bool,
    ) -> StrategyTree {
        if i == self.game.moves() - 1 {
            // carry a concrete final solution when the winning protector
            // closes an odd game
            let witness = if self.game.first_player_is_protector() == outcome
                && self.game.moves() % 2 == 1
                && self.leaf(&phat, &bhat)
            {
                if self.game.over_blocker_budget(&bhat) {
                    self.solutions.masks().first().cloned()
                } else {
                    self.solutions
                        .iter()
                        .find(|s| s.is_disjoint(&bhat))
                        .cloned()
                }
            } else {
                None
            };
            return StrategyTree::Leaf { witness };
        }
        let protector_turn = self.game.protector_moves_at(i);
        let existential = protector_turn == self.game.first_player_is_protector();
        let winner_moves = existential == outcome;
        let step = |mask: &SubsetMask| {
            if protector_turn {
                (phat.union(mask), bhat.clone())
            } else {
                (phat.clone(), bhat.union(mask))
            }
        };
        if winner_moves {
            for mask in self.moves_at(i, &phat, &bhat) {
                let (p, b) = step(&mask);
                if self.eval(i + 1, p.clone(), b.clone()) == outcome {
                    let next = self.extract(i + 1, p, b, outcome);
                    return StrategyTree::Chosen {
                        move_index: i,
                        mask,
                        next: Box::new(next),
                    };
                }
            }
            unreachable!("winner has a move realizing the outcome");
        }
        let arms = self
            .moves_at(i, &phat, &bhat)
            .into_iter()
            .map(|mask| {
                let (p, b) = step(&mask);
                (mask, self.extract(i + 1, p, b, outcome))
            })
            .collect();
        StrategyTree::Branch {
            move_index: i,
            arms,
        }
    }
}

/// `exists B ⊆ D, |B| ≤ budget, hitting every solution` — the two-move game
/// with the blocker in the existential role.
pub fn solve_interdiction_simple(
    base: &InstanceBundle,
    vulnerable: &SubsetMask,
    budget: u32,
    cap: Cap,
) -> Result<GameVerdict, GameError> {
    solve_blocker_search(base, cap, |mask| {
        mask.is_subset_of(vulnerable) && mask.count() as u32 <= budget
    })
}

/// Cost variant: any blocker with `cost(B) ≤ threshold`; costs may be
/// negative.
pub fn solve_interdiction_cost(
    base: &InstanceBundle,
    costs: &[i64],
    threshold: i64,
    cap: Cap,
) -> Result<GameVerdict, GameError> {
    if costs.len() != base.width() {
        return Err(GameError::InvalidGame(format!(
            "cost table has {} entries for universe of width {}",
            costs.len(),
            base.width()
        )));
    }
    let total: i128 = costs.iter().map(|&c| (c as i128).abs()).sum();
    if total > i64::MAX as i128 / 4 {
        return Err(GameError::InvalidGame("cost sum overflows".into()));
    }
    solve_blocker_search(base, cap, |mask| {
        let cost: i64 = mask.ids().into_iter().map(|i| costs[i]).sum();
        cost <= threshold
    })
}

fn solve_blocker_search(
    base: &InstanceBundle,
    cap: Cap,
    feasible: impl Fn(&SubsetMask) -> bool,
) -> Result<GameVerdict, GameError> {
    cap.admit(base.width())?;
    let solutions = enumerate_solutions(base, cap)?;
    let mut nodes = 0u64;
    let mut winning: Option<SubsetMask> = None;
    let mut arms: Vec<(SubsetMask, StrategyTree)> = Vec::new();
    let full = SubsetMask::full(base.width());
    full.for_each_subset(|mask| {
        if !feasible(mask) || winning.is_some() {
            return;
        }
        nodes += 1;
        match solutions.iter().find(|s| s.is_disjoint(mask)) {
            None => winning = Some(mask.clone()),
            Some(escape) => arms.push((
                mask.clone(),
                StrategyTree::Leaf {
                    witness: Some(escape.clone()),
                },
            )),
        }
    });
    let (first_player_wins, strategy) = match winning {
        Some(mask) => (
            true,
            StrategyTree::Chosen {
                move_index: 0,
                mask,
                next: Box::new(StrategyTree::Leaf { witness: None }),
            },
        ),
        None => (
            false,
            StrategyTree::Branch {
                move_index: 0,
                arms,
            },
        ),
    };
    Ok(GameVerdict {
        first_player_wins,
        strategy,
        nodes_explored: nodes,
    })
}
