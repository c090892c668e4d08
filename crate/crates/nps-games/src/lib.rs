//! Exhaustive solvers for the three lifted game families: adversarial
//! selection, protection-interdiction, and adjustable robust selection, plus
//! the two-stage cost form. All solvers evaluate the quantified game
//! formulas literally and extract replayable strategy trees.

mod adjustable;
mod interdiction;
pub mod json;
mod selection;
mod verdict;

pub use adjustable::{AdjustableGame, TwoStageCostGame};
pub use interdiction::{
    solve_interdiction_cost, solve_interdiction_simple, BudgetMode, InterdictionGame,
};
pub use selection::SelectionGame;
pub use verdict::{GameError, GameVerdict, StrategyTree};
