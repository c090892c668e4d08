//! Lifted game pairs: a source game bundled with its lifted (or gadget)
//! target, the element correspondence used, and exhaustive verification that
//! the lift preserves the winner.

use nps_core::{Cap, Embedding, SubsetMask};
use nps_games::json::GameDoc;
use nps_games::{GameError, GameVerdict, StrategyTree};
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct LiftedGamePair {
    pub source: GameDoc,
    pub target: GameDoc,
    pub embedding: Embedding,
    pub provenance: String,
}

/// One mirrored move of the winner's strategy.
#[derive(Clone, Debug)]
pub struct MimicStep {
    pub move_index: usize,
    pub source_move: Vec<String>,
    pub target_move: Vec<String>,
    pub legal: bool,
}

#[derive(Debug)]
pub struct LiftReport {
    pub source_wins: bool,
    pub target_wins: bool,
    pub verdicts_agree: bool,
    pub source_nodes: u64,
    pub target_nodes: u64,
    /// The winner's source moves mapped through the embedding, each checked
    /// for legality in the target game.
    pub mimicking: Vec<MimicStep>,
    pub all_moves_legal: bool,
}

fn solve(doc: &GameDoc, cap: Cap) -> Result<GameVerdict, GameError> {
    match doc {
        GameDoc::Selection(g) => g.solve(cap),
        GameDoc::Interdiction(g) => g.solve(cap),
        GameDoc::Adjustable(g) => g.solve(cap),
        GameDoc::TwoStageCost(g) => g.solve(cap),
    }
}

/// Solves both sides of a pair and reports verdict agreement plus the
/// mimicking transcript of the source winner's strategy.
pub fn verify_lift(pair: &LiftedGamePair, cap: Cap) -> Result<LiftReport, GameError> {
    let source = solve(pair.source(), cap)?;
    let target = solve(pair.target(), cap)?;
    let mut steps = Vec::new();
    collect_mimic_steps(pair, &source.strategy, &mut steps);
    let all_legal = steps.iter().all(|s| s.legal);
    Ok(LiftReport {
        source_wins: source.first_player_wins,
        target_wins: target.first_player_wins,
        verdicts_agree: source.first_player_wins == target.first_player_wins,
        source_nodes: source.nodes_explored,
        target_nodes: target.nodes_explored,
        mimicking: steps,
        all_moves_legal: all_legal,
    })
}

impl LiftedGamePair {
    pub fn source(&self) -> &GameDoc {
        &self.source
    }

    pub fn target(&self) -> &GameDoc {
        &self.target
    }

    /// The legal-move set for move `i` of the target game, given the imaged
    /// occupancy so far. Only moves inside the imaged universe are compared;
    /// auxiliary elements never appear in mirrored moves.
    fn target_move_scope(&self, move_index: usize) -> Option<SubsetMask> {
        match &self.target {
            GameDoc::Selection(g) => g.parts().get(move_index).cloned(),
            GameDoc::Interdiction(g) => g.nested().get(move_index).cloned(),
            GameDoc::Adjustable(g) => {
                // selector at 2i, adversary at 2i-1
                if move_index % 2 == 0 {
                    g.stages().get(move_index / 2).cloned()
                } else {
                    let stage = (move_index + 1) / 2;
                    g.stages().get(stage).map(|s| s.intersect(&g.vulnerable))
                }
            }
            GameDoc::TwoStageCost(_) => None,
        }
    }
}

fn collect_mimic_steps(pair: &LiftedGamePair, node: &StrategyTree, out: &mut Vec<MimicStep>) {
    match node {
        StrategyTree::Leaf { .. } => {}
        StrategyTree::Chosen {
            move_index,
            mask,
            next,
        } => {
            let imaged = pair
                .embedding
                .lift(mask)
                .expect("strategy masks share the source width");
            let legal = pair
                .target_move_scope(*move_index)
                .map(|scope| imaged.is_subset_of(&scope))
                .unwrap_or(true);
            out.push(MimicStep {
                move_index: *move_index,
                source_move: pair.source().base().labels_of(mask),
                target_move: pair.target().base().labels_of(&imaged),
                legal,
            });
            collect_mimic_steps(pair, next, out);
        }
        StrategyTree::Branch { arms, .. } => {
            for (_, sub) in arms {
                collect_mimic_steps(pair, sub, out);
            }
        }
    }
}

pub fn encode_pair(pair: &LiftedGamePair) -> Result<Value, nps_core::CoreError> {
    Ok(json!({
        "source": nps_games::json::encode_game(&pair.source)?,
        "target": nps_games::json::encode_game(&pair.target)?,
        "embedding": pair.embedding.table(),
        "provenance": pair.provenance,
    }))
}

pub fn decode_pair(doc: &Value) -> Result<LiftedGamePair, GameError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| GameError::InvalidGame("lifted pair document must be an object".into()))?;
    let source = nps_games::json::decode_game(
        obj.get("source")
            .ok_or_else(|| GameError::InvalidGame("missing `source`".into()))?,
    )?;
    let target = nps_games::json::decode_game(
        obj.get("target")
            .ok_or_else(|| GameError::InvalidGame("missing `target`".into()))?,
    )?;
    let table: Vec<usize> = obj
        .get("embedding")
        .and_then(Value::as_array)
        .ok_or_else(|| GameError::InvalidGame("missing `embedding` table".into()))?
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| GameError::InvalidGame("embedding entries must be ids".into()))
        })
        .collect::<Result<_, _>>()?;
    let embedding = Embedding::new(table, target.base().width()).map_err(GameError::from)?;
    let provenance = obj
        .get("provenance")
        .and_then(Value::as_str)
        .unwrap_or("unknown")
        .to_string();
    Ok(LiftedGamePair {
        source,
        target,
        embedding,
        provenance,
    })
}
