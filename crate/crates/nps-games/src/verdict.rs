//! Game verdicts with extracted strategy trees.

use nps_core::SubsetMask;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GameError {
    #[error(transparent)]
    Core(#[from] nps_core::CoreError),
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("malformed nesting: {0}")]
    MalformedNesting(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
}

/// A game tree annotated with the winner's play: at nodes where the winner
/// moves there is a single chosen move, at nodes where the loser moves every
/// legal reply is expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyTree {
    /// End of the quantified moves; `witness` carries a final selected
    /// solution when the game ends in an existential solution pick.
    Leaf { witness: Option<SubsetMask> },
    /// The winner's move at `move_index` (0-based).
    Chosen {
        move_index: usize,
        mask: SubsetMask,
        next: Box<StrategyTree>,
    },
    /// All legal loser moves at `move_index`.
    Branch {
        move_index: usize,
        arms: Vec<(SubsetMask, StrategyTree)>,
    },
}

impl StrategyTree {
    /// The winner's opening move, when the winner moves first.
    pub fn root_move(&self) -> Option<&SubsetMask> {
        match self {
            StrategyTree::Chosen { mask, .. } => Some(mask),
            _ => None,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            StrategyTree::Leaf { .. } => 1,
            StrategyTree::Chosen { next, .. } => 1 + next.node_count(),
            StrategyTree::Branch { arms, .. } => {
                1 + arms.iter().map(|(_, t)| t.node_count()).sum::<usize>()
            }
        }
    }
}

/// Outcome of an exhaustive solve: who wins, how, and how much work it took.
#[derive(Clone, Debug)]
pub struct GameVerdict {
    pub first_player_wins: bool,
    pub strategy: StrategyTree,
    pub nodes_explored: u64,
}
