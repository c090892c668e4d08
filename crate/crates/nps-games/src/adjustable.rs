//! Adjustable robust games: staged selection against a blocking adversary
//! with a global budget, and the two-stage min-max-min cost form under
//! discrete budgeted uncertainty.

use std::collections::HashMap;

use nps_core::{enumerate_solutions, Cap, InstanceBundle, SolutionSet, SubsetMask};

use crate::verdict::{GameError, GameVerdict, StrategyTree};

#[derive(Clone, Debug)]
pub struct AdjustableGame {
    pub base: InstanceBundle,
    stages: Vec<SubsetMask>,
    pub vulnerable: SubsetMask,
    pub budget: u32,
}

impl AdjustableGame {
    pub fn new(
        base: InstanceBundle,
        stages: Vec<SubsetMask>,
        vulnerable: SubsetMask,
        budget: u32,
    ) -> Result<Self, GameError> {
        if stages.is_empty() {
            return Err(GameError::MalformedPartition("no stages".into()));
        }
        let width = base.width();
        let mut seen = SubsetMask::empty(width);
        for (i, s) in stages.iter().enumerate() {
            if s.width() != width {
                return Err(GameError::MalformedPartition(format!(
                    "stage {i} has width {} instead of {width}",
                    s.width()
                )));
            }
            if !seen.is_disjoint(s) {
                return Err(GameError::MalformedPartition(format!("stage {i} overlaps")));
            }
            seen = seen.union(s);
        }
        if seen != SubsetMask::full(width) {
            return Err(GameError::MalformedPartition(
                "stages do not cover the universe".into(),
            ));
        }
        if vulnerable.width() != width {
            return Err(GameError::MalformedPartition(
                "vulnerable set width mismatch".into(),
            ));
        }
        Ok(AdjustableGame {
            base,
            stages,
            vulnerable,
            budget,
        })
    }

    pub fn stages(&self) -> &[SubsetMask] {
        &self.stages
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn solve(&self, cap: Cap) -> Result<GameVerdict, GameError> {
        self.solve_with(cap, true)
    }

    pub fn solve_with(&self, cap: Cap, memoize: bool) -> Result<GameVerdict, GameError> {
        cap.admit(self.base.width())?;
        let mut solver = AdjSolver {
            game: self,
            memo: HashMap::new(),
            memoize,
            nodes: 0,
        };
        let empty = SubsetMask::empty(self.base.width());
        let first_player_wins = solver.stage_value(0, empty.clone(), 0);
        let strategy = solver.extract_dm(0, empty, 0, first_player_wins);
        Ok(GameVerdict {
            first_player_wins,
            strategy,
            nodes_explored: solver.nodes,
        })
    }

    /// Leaf rule: the selector wins whenever the adversary overspent,
    /// otherwise the accumulated selection must be a solution.
    fn leaf_value(&self, acc: &SubsetMask, spent: u32) -> bool {
        spent > self.budget || self.base.spec().verify(self.base.payload(), acc)
    }

    /// Adversary options at stage `i >= 1` (0-based).
    fn blocks_at(&self, i: usize) -> SubsetMask {
        self.stages[i].intersect(&self.vulnerable)
    }

    pub fn replay(&self, verdict: &GameVerdict) -> bool {
        let empty = SubsetMask::empty(self.base.width());
        self.replay_dm(&verdict.strategy, 0, &empty, 0, verdict.first_player_wins)
    }

    /// Selector nodes sit at even move indices `2i`, adversary nodes at odd
    /// indices `2i - 1` for stage `i`.
    fn replay_dm(
        &self,
        node: &StrategyTree,
        stage: usize,
        acc: &SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> bool {
        self.replay_dm_blocked(
            node,
            stage,
            acc,
            &SubsetMask::empty(self.base.width()),
            spent,
            outcome,
        )
    }

    fn replay_dm_blocked(
        &self,
        node: &StrategyTree,
        stage: usize,
        acc: &SubsetMask,
        blocked: &SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> bool {
        if stage == self.stage_count() {
            return matches!(node, StrategyTree::Leaf { .. })
                && self.leaf_value(acc, spent) == outcome;
        }
        let available = self.stages[stage].difference(blocked);
        match node {
            StrategyTree::Chosen {
                move_index,
                mask,
                next,
            } => {
                *move_index == 2 * stage
                    && outcome // selector is the first player
                    && mask.is_subset_of(&available)
                    && self.replay_adv(next, stage + 1, &acc.union(mask), spent, outcome)
            }
            StrategyTree::Branch { move_index, arms } => {
                *move_index == 2 * stage
                    && !outcome
                    && arms.len() == 1 << available.count()
                    && arms.iter().all(|(mask, sub)| {
                        mask.is_subset_of(&available)
                            && self.replay_adv(sub, stage + 1, &acc.union(mask), spent, outcome)
                    })
            }
            StrategyTree::Leaf { .. } => false,
        }
    }

    fn replay_adv(
        &self,
        node: &StrategyTree,
        stage: usize,
        acc: &SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> bool {
        if stage == self.stage_count() {
            return matches!(node, StrategyTree::Leaf { .. })
                && self.leaf_value(acc, spent) == outcome;
        }
        let blockable = self.blocks_at(stage);
        match node {
            StrategyTree::Chosen {
                move_index,
                mask,
                next,
            } => {
                *move_index == 2 * stage - 1
                    && !outcome // adversary wins only when the selector loses
                    && mask.is_subset_of(&blockable)
                    && self.replay_dm_blocked(
                        next,
                        stage,
                        acc,
                        mask,
                        spent + mask.count() as u32,
                        outcome,
                    )
            }
            StrategyTree::Branch { move_index, arms } => {
                *move_index == 2 * stage - 1
                    && outcome
                    && arms.len() == 1 << blockable.count()
                    && arms.iter().all(|(mask, sub)| {
                        mask.is_subset_of(&blockable)
                            && self.replay_dm_blocked(
                                sub,
                                stage,
                                acc,
                                mask,
                                spent + mask.count() as u32,
                                outcome,
                            )
                    })
            }
            StrategyTree::Leaf { .. } => false,
        }
    }
}

struct AdjSolver<'a> {
    game: &'a AdjustableGame,
    memo: HashMap<(usize, SubsetMask, u32), bool>,
    memoize: bool,
    nodes: u64,
}

impl AdjSolver<'_> {
    /// Value at the start of stage `i` (selector to move after the adversary
    /// blocked for this stage; stage 0 has no adversary move).
    fn stage_value(&mut self, i: usize, acc: SubsetMask, spent: u32) -> bool {
        self.nodes += 1;
        if i == self.game.stage_count() {
            return self.game.leaf_value(&acc, spent);
        }
        let key = (i, acc.clone(), spent.min(self.game.budget + 1));
        if self.memoize {
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
        }
        let result = if i == 0 {
            self.select_value(0, &acc, &SubsetMask::empty(acc.width()), spent)
        } else {
            // adversary picks a block, then the selector responds
            let mut all = true;
            let blockable = self.game.blocks_at(i);
            blockable.for_each_subset(|block| {
                if !all {
                    return;
                }
                let spent = spent + block.count() as u32;
                if !self.select_value(i, &acc, block, spent) {
                    all = false;
                }
            });
            all
        };
        if self.memoize {
            self.memo.insert(key, result);
        }
        result
    }

    fn select_value(
        &mut self,
        i: usize,
        acc: &SubsetMask,
        blocked: &SubsetMask,
        spent: u32,
    ) -> bool {
        let available = self.game.stages[i].difference(blocked);
        let mut any = false;
        available.for_each_subset(|pick| {
            if any {
                return;
            }
            if self.stage_value(i + 1, acc.union(pick), spent) {
                any = true;
            }
        });
        any
    }

    fn extract_dm(
        &mut self,
        stage: usize,
        acc: SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> StrategyTree {
        self.extract_dm_blocked(
            stage,
            acc,
            SubsetMask::empty(self.game.base.width()),
            spent,
            outcome,
        )
    }

    fn extract_dm_blocked(
        &mut self,
        stage: usize,
        acc: SubsetMask,
        blocked: SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> StrategyTree {
        if stage == self.game.stage_count() {
            return StrategyTree::Leaf { witness: None };
        }
        let available = self.game.stages[stage].difference(&blocked);
        if outcome {
            for pick in available.subsets() {
                if self.stage_value(stage + 1, acc.union(&pick), spent) {
                    let next = self.extract_adv(stage + 1, acc.union(&pick), spent, outcome);
                    return StrategyTree::Chosen {
                        move_index: 2 * stage,
                        mask: pick,
                        next: Box::new(next),
                    };
                }
            }
            unreachable!("winning selector has a move");
        }
        let arms = available
            .subsets()
            .into_iter()
            .map(|pick| {
                let sub = self.extract_adv(stage + 1, acc.union(&pick), spent, outcome);
                (pick, sub)
            })
            .collect();
        StrategyTree::Branch {
            move_index: 2 * stage,
            arms,
        }
    }

    fn extract_adv(
        &mut self,
        stage: usize,
        acc: SubsetMask,
        spent: u32,
        outcome: bool,
    ) -> StrategyTree {
        if stage == self.game.stage_count() {
            return StrategyTree::Leaf { witness: None };
        }
        let blockable = self.game.blocks_at(stage);
        if !outcome {
            // the adversary is winning: pick the first block that refutes
            for block in blockable.subsets() {
                let spent2 = spent + block.count() as u32;
                if !self.select_value(stage, &acc, &block, spent2) {
                    let next = self.extract_dm_blocked(stage, acc, block.clone(), spent2, outcome);
                    return StrategyTree::Chosen {
                        move_index: 2 * stage - 1,
                        mask: block,
                        next: Box::new(next),
                    };
                }
            }
            unreachable!("winning adversary has a block");
        }
        let arms = blockable
            .subsets()
            .into_iter()
            .map(|block| {
                let spent2 = spent + block.count() as u32;
                let sub =
                    self.extract_dm_blocked(stage, acc.clone(), block.clone(), spent2, outcome);
                (block, sub)
            })
            .collect();
        StrategyTree::Branch {
            move_index: 2 * stage - 1,
            arms,
        }
    }
}

/// Two-stage min-max-min with discrete budgeted cost uncertainty: the
/// adversary raises at most `budget` elements to their upper second-stage
/// cost. Cheat-free by construction; infeasible completions count as +inf.
#[derive(Clone, Debug)]
pub struct TwoStageCostGame {
    pub base: InstanceBundle,
    pub first_costs: Vec<i64>,
    pub second_low: Vec<i64>,
    pub second_high: Vec<i64>,
    pub threshold: i64,
    pub budget: u32,
}

impl TwoStageCostGame {
    pub fn new(
        base: InstanceBundle,
        first_costs: Vec<i64>,
        second_low: Vec<i64>,
        second_high: Vec<i64>,
        threshold: i64,
        budget: u32,
    ) -> Result<Self, GameError> {
        let width = base.width();
        for (name, v) in [
            ("c1", &first_costs),
            ("c2 lower", &second_low),
            ("c2 upper", &second_high),
        ] {
            if v.len() != width {
                return Err(GameError::InvalidGame(format!(
                    "{name} has {} entries for universe of width {width}",
                    v.len()
                )));
            }
            let total: i128 = v.iter().map(|&c| (c as i128).abs()).sum();
            if total > i64::MAX as i128 / 8 {
                return Err(GameError::InvalidGame(format!("{name} sum overflows")));
            }
        }
        if second_low.iter().zip(&second_high).any(|(lo, hi)| lo > hi) {
            return Err(GameError::InvalidGame(
                "second-stage lower cost exceeds upper cost".into(),
            ));
        }
        Ok(TwoStageCostGame {
            base,
            first_costs,
            second_low,
            second_high,
            threshold,
            budget,
        })
    }

    fn mask_cost(costs: &[i64], mask: &SubsetMask) -> i64 {
        mask.ids().into_iter().map(|i| costs[i]).sum()
    }

    /// Best completion cost of `first` under scenario `raised`; None when no
    /// solution extends `first`.
    fn inner_min(
        &self,
        solutions: &SolutionSet,
        first: &SubsetMask,
        raised: &SubsetMask,
    ) -> Option<i64> {
        let mut best: Option<i64> = None;
        for sol in solutions.iter() {
            if !first.is_subset_of(sol) {
                continue;
            }
            let second = sol.difference(first);
            let mut cost = Self::mask_cost(&self.first_costs, first);
            for id in second.ids() {
                cost += if raised.contains(id) {
                    self.second_high[id]
                } else {
                    self.second_low[id]
                };
            }
            best = Some(best.map_or(cost, |b: i64| b.min(cost)));
        }
        best
    }

    /// Scenario cost of answering `first` with the concrete completion
    /// `second` under `raised`.
    fn play_cost(&self, first: &SubsetMask, second: &SubsetMask, raised: &SubsetMask) -> i64 {
        let mut cost = Self::mask_cost(&self.first_costs, first);
        for id in second.ids() {
            cost += if raised.contains(id) {
                self.second_high[id]
            } else {
                self.second_low[id]
            };
        }
        cost
    }

    /// Replays a strategy tree: for a winning selector, every scenario arm
    /// must carry a disjoint completion within the threshold; for a winning
    /// adversary, every first-stage arm must name a refuting scenario.
    pub fn replay(&self, verdict: &GameVerdict, cap: Cap) -> Result<bool, GameError> {
        let solutions = enumerate_solutions(&self.base, cap)?;
        let width = self.base.width();
        let scenario_count = {
            let mut count = 0usize;
            SubsetMask::full(width).for_each_subset(|raised| {
                if raised.count() as u32 <= self.budget {
                    count += 1;
                }
            });
            count
        };
        Ok(match &verdict.strategy {
            StrategyTree::Chosen {
                move_index: 0,
                mask: first,
                next,
            } if verdict.first_player_wins => {
                let StrategyTree::Branch {
                    move_index: 1,
                    arms,
                } = next.as_ref()
                else {
                    return Ok(false);
                };
                arms.len() == scenario_count
                    && arms.iter().all(|(raised, sub)| {
                        raised.count() as u32 <= self.budget
                            && match sub {
                                StrategyTree::Chosen {
                                    move_index: 2,
                                    mask: second,
                                    next,
                                } => {
                                    matches!(next.as_ref(), StrategyTree::Leaf { .. })
                                        && second.is_disjoint(first)
                                        && solutions.contains(&first.union(second))
                                        && self.play_cost(first, second, raised) <= self.threshold
                                }
                                _ => false,
                            }
                    })
            }
            StrategyTree::Branch {
                move_index: 0,
                arms,
            } if !verdict.first_player_wins => {
                // every possible first stage is answered by a scenario whose
                // best completion misses the threshold
                arms.len() == 1 << width
                    && arms.iter().all(|(first, sub)| match sub {
                        StrategyTree::Chosen {
                            move_index: 1,
                            mask: raised,
                            ..
                        } => {
                            raised.count() as u32 <= self.budget
                                && self
                                    .inner_min(&solutions, first, raised)
                                    .is_none_or(|cost| cost > self.threshold)
                        }
                        _ => false,
                    })
            }
            _ => false,
        })
    }

    pub fn solve(&self, cap: Cap) -> Result<GameVerdict, GameError> {
        cap.admit(self.base.width())?;
        let solutions = enumerate_solutions(&self.base, cap)?;
        let width = self.base.width();
        let mut nodes = 0u64;
        let scenario_ok = |raised: &SubsetMask| raised.count() as u32 <= self.budget;

        let mut winning: Option<(SubsetMask, StrategyTree)> = None;
        let mut losing_arms: Vec<(SubsetMask, StrategyTree)> = Vec::new();
        SubsetMask::full(width).for_each_subset(|first| {
            if winning.is_some() {
                return;
            }
            nodes += 1;
            // adversary's best scenario against this first stage
            let mut refuting: Option<SubsetMask> = None;
            let mut scenario_arms: Vec<(SubsetMask, StrategyTree)> = Vec::new();
            SubsetMask::full(width).for_each_subset(|raised| {
                if refuting.is_some() || !scenario_ok(raised) {
                    return;
                }
                nodes += 1;
                match self.inner_min(&solutions, first, raised) {
                    Some(cost) if cost <= self.threshold => {
                        // remember the cheapest completing solution for replay
                        let witness = solutions
                            .iter()
                            .filter(|s| first.is_subset_of(s))
                            .min_by_key(|s| {
                                let second = s.difference(first);
                                let mut c = Self::mask_cost(&self.first_costs, first);
                                for id in second.ids() {
                                    c += if raised.contains(id) {
                                        self.second_high[id]
                                    } else {
                                        self.second_low[id]
                                    };
                                }
                                c
                            })
                            .cloned();
                        scenario_arms.push((
                            raised.clone(),
                            StrategyTree::Chosen {
                                move_index: 2,
                                mask: witness
                                    .clone()
                                    .map(|s| s.difference(first))
                                    .unwrap_or_else(|| SubsetMask::empty(width)),
                                next: Box::new(StrategyTree::Leaf { witness }),
                            },
                        ));
                    }
                    _ => refuting = Some(raised.clone()),
                }
            });
            match refuting {
                None => {
                    winning = Some((
                        first.clone(),
                        StrategyTree::Branch {
                            move_index: 1,
                            arms: scenario_arms,
                        },
                    ));
                }
                Some(raised) => losing_arms.push((
                    first.clone(),
                    StrategyTree::Chosen {
                        move_index: 1,
                        mask: raised,
                        next: Box::new(StrategyTree::Leaf { witness: None }),
                    },
                )),
            }
        });
        let (first_player_wins, strategy) = match winning {
            Some((mask, branch)) => (
                true,
                StrategyTree::Chosen {
                    move_index: 0,
                    mask,
                    next: Box::new(branch),
                },
            ),
            None => (
                false,
                StrategyTree::Branch {
                    move_index: 0,
                    arms: losing_arms,
                },
            ),
        };
        Ok(GameVerdict {
            first_player_wins,
            strategy,
            nodes_explored: nodes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nps_catalog::payload::CnfFormula;
    use std::sync::Arc;

    fn sat_base(num_vars: usize, clauses: &[&[i32]]) -> InstanceBundle {
        let cnf = CnfFormula {
            num_vars,
            clauses: clauses.iter().map(|c| c.to_vec()).collect(),
        };
        InstanceBundle::new(nps_catalog::find("sat-v").unwrap(), Arc::new(cnf)).unwrap()
    }

    fn mask(width: usize, ids: &[usize]) -> SubsetMask {
        SubsetMask::from_ids(width, ids).unwrap()
    }

    #[test]
    fn zero_budget_reduces_to_feasibility() {
        let base = sat_base(2, &[&[1, 2]]);
        let game = AdjustableGame::new(
            base,
            vec![mask(2, &[0]), mask(2, &[1])],
            SubsetMask::full(2),
            0,
        )
        .unwrap();
        let verdict = game.solve(Cap::default()).unwrap();
        assert!(verdict.first_player_wins);
        assert!(game.replay(&verdict));
    }

    #[test]
    fn empty_vulnerable_set_matches_zero_budget() {
        let base = sat_base(2, &[&[1], &[-2]]);
        let with_budget = AdjustableGame::new(
            base.clone(),
            vec![mask(2, &[0]), mask(2, &[1])],
            SubsetMask::empty(2),
            5,
        )
        .unwrap()
        .solve(Cap::default())
        .unwrap();
        let without = AdjustableGame::new(
            base,
            vec![mask(2, &[0]), mask(2, &[1])],
            SubsetMask::full(2),
            0,
        )
        .unwrap()
        .solve(Cap::default())
        .unwrap();
        assert_eq!(with_budget.first_player_wins, without.first_player_wins);
    }

    #[test]
    fn blocking_a_needed_variable_flips_the_verdict() {
        // x2 must be picked in stage 2; one block on it kills the selector
        let base = sat_base(2, &[&[2], &[1, -2]]);
        let stages = vec![mask(2, &[0]), mask(2, &[1])];
        let fragile = AdjustableGame::new(base.clone(), stages.clone(), mask(2, &[1]), 1)
            .unwrap()
            .solve(Cap::default())
            .unwrap();
        assert!(!fragile.first_player_wins);
        let safe = AdjustableGame::new(base, stages, mask(2, &[0]), 1)
            .unwrap()
            .solve(Cap::default())
            .unwrap();
        assert!(safe.first_player_wins);
    }

    #[test]
    fn adjustable_memoization_and_replay() {
        let base = sat_base(3, &[&[1, 2], &[-1, 3]]);
        let game = AdjustableGame::new(
            base,
            vec![mask(3, &[0]), mask(3, &[1]), mask(3, &[2])],
            mask(3, &[1, 2]),
            1,
        )
        .unwrap();
        let with = game.solve_with(Cap::default(), true).unwrap();
        let without = game.solve_with(Cap::default(), false).unwrap();
        assert_eq!(with.first_player_wins, without.first_player_wins);
        assert!(game.replay(&with));
        assert!(game.replay(&without));
    }

    #[test]
    fn equal_bounds_make_the_adversary_irrelevant() {
        let base = sat_base(2, &[&[1, 2]]);
        let game = TwoStageCostGame::new(base, vec![1, 1], vec![0, 0], vec![0, 0], 0, 2).unwrap();
        // picking nothing first and completing at low cost stays within 0
        assert!(game.solve(Cap::default()).unwrap().first_player_wins);
    }

    #[test]
    fn full_budget_is_the_pure_worst_case() {
        let base = sat_base(1, &[&[1]]);
        // the only solution costs high = 5 in stage two; threshold 4 fails
        let lose = TwoStageCostGame::new(base.clone(), vec![9], vec![0], vec![5], 4, 1)
            .unwrap()
            .solve(Cap::default())
            .unwrap();
        assert!(!lose.first_player_wins);
        // buying in stage one for 3 avoids the uncertainty
        let win = TwoStageCostGame::new(base, vec![3], vec![0], vec![5], 4, 1)
            .unwrap()
            .solve(Cap::default())
            .unwrap();
        assert!(win.first_player_wins);
    }
}
