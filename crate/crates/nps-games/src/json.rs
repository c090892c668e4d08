//! Game documents: `{"game": <kind>, "base": <instance doc>, ...}` with
//! masks as sorted id arrays.

use nps_core::{CoreError, SubsetMask};
use serde_json::{json, Map, Value};

use crate::{AdjustableGame, BudgetMode, InterdictionGame, SelectionGame, TwoStageCostGame};

#[derive(Clone, Debug)]
pub enum GameDoc {
    Selection(SelectionGame),
    Interdiction(InterdictionGame),
    Adjustable(AdjustableGame),
    TwoStageCost(TwoStageCostGame),
}

impl GameDoc {
    pub fn kind(&self) -> &'static str {
        match self {
            GameDoc::Selection(_) => "selection",
            GameDoc::Interdiction(_) => "interdiction",
            GameDoc::Adjustable(_) => "adjustable",
            GameDoc::TwoStageCost(_) => "two-stage-cost",
        }
    }

    pub fn base(&self) -> &nps_core::InstanceBundle {
        match self {
            GameDoc::Selection(g) => &g.base,
            GameDoc::Interdiction(g) => &g.base,
            GameDoc::Adjustable(g) => &g.base,
            GameDoc::TwoStageCost(g) => &g.base,
        }
    }
}

fn bad(msg: impl Into<String>) -> CoreError {
    CoreError::InvalidInstance(msg.into())
}

fn mask_to_ids(mask: &SubsetMask) -> Value {
    json!(mask.ids())
}

fn ids_to_mask(width: usize, v: &Value) -> Result<SubsetMask, CoreError> {
    let ids: Vec<usize> = v
        .as_array()
        .ok_or_else(|| bad("mask must be an array of element ids"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|i| i as usize)
                .ok_or_else(|| bad("mask entries must be non-negative integers"))
        })
        .collect::<Result<_, _>>()?;
    SubsetMask::from_ids(width, &ids)
}

fn masks_field(
    obj: &Map<String, Value>,
    key: &str,
    width: usize,
) -> Result<Vec<SubsetMask>, CoreError> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing mask list `{key}`")))?
        .iter()
        .map(|v| ids_to_mask(width, v))
        .collect()
}

fn costs_field(obj: &Map<String, Value>, key: &str) -> Result<Vec<i64>, CoreError> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing cost list `{key}`")))?
        .iter()
        .map(|v| {
            v.as_i64()
                .ok_or_else(|| bad(format!("`{key}` entries must be integers")))
        })
        .collect()
}

fn u32_field(obj: &Map<String, Value>, key: &str) -> Result<u32, CoreError> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as u32)
        .ok_or_else(|| bad(format!("missing integer field `{key}`")))
}

pub fn encode_game(doc: &GameDoc) -> Result<Value, CoreError> {
    let base = nps_reductions::encode_instance(doc.base())?;
    Ok(match doc {
        GameDoc::Selection(g) => json!({
            "game": "selection",
            "base": base,
            "partition": g.parts().iter().map(mask_to_ids).collect::<Vec<_>>(),
        }),
        GameDoc::Interdiction(g) => json!({
            "game": "interdiction",
            "base": base,
            "nested": g.nested().iter().map(mask_to_ids).collect::<Vec<_>>(),
            "k": g.moves(),
            "budget_protector": g.budget_protector,
            "budget_blocker": g.budget_blocker,
            "budget_mode": match g.mode { BudgetMode::Global => "global", BudgetMode::Local => "local" },
        }),
        GameDoc::Adjustable(g) => json!({
            "game": "adjustable",
            "base": base,
            "stages": g.stages().iter().map(mask_to_ids).collect::<Vec<_>>(),
            "vulnerable": mask_to_ids(&g.vulnerable),
            "budget": g.budget,
        }),
        GameDoc::TwoStageCost(g) => json!({
            "game": "two-stage-cost",
            "base": base,
            "c1": g.first_costs,
            "c2_low": g.second_low,
            "c2_high": g.second_high,
            "threshold": g.threshold,
            "budget": g.budget,
        }),
    })
}

pub fn decode_game(doc: &Value) -> Result<GameDoc, crate::GameError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| bad("game document must be an object"))?;
    let kind = obj
        .get("game")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing `game` field"))?;
    let base = nps_reductions::decode_instance(
        obj.get("base").ok_or_else(|| bad("missing `base` field"))?,
    )?;
    let width = base.width();
    Ok(match kind {
        "selection" => {
            let parts = masks_field(obj, "partition", width)?;
            GameDoc::Selection(SelectionGame::new(base, parts)?)
        }
        "interdiction" => {
            let nested = masks_field(obj, "nested", width)?;
            if let Some(k) = obj.get("k").and_then(Value::as_u64) {
                if k as usize != nested.len() + 1 {
                    return Err(crate::GameError::MalformedNesting(format!(
                        "k = {k} does not match {} accessible sets",
                        nested.len()
                    )));
                }
            }
            let mode = match obj.get("budget_mode").and_then(Value::as_str) {
                None | Some("global") => BudgetMode::Global,
                Some("local") => BudgetMode::Local,
                Some(other) => {
                    return Err(crate::GameError::InvalidGame(format!(
                        "unknown budget mode `{other}`"
                    )))
                }
            };
            GameDoc::Interdiction(InterdictionGame::new(
                base,
                nested,
                u32_field(obj, "budget_protector")?,
                u32_field(obj, "budget_blocker")?,
                mode,
            )?)
        }
        "adjustable" => {
            let stages = masks_field(obj, "stages", width)?;
            let vulnerable = ids_to_mask(
                width,
                obj.get("vulnerable")
                    .ok_or_else(|| bad("missing `vulnerable`"))?,
            )?;
            GameDoc::Adjustable(AdjustableGame::new(
                base,
                stages,
                vulnerable,
                u32_field(obj, "budget")?,
            )?)
        }
        "two-stage-cost" => {
            let threshold = obj
                .get("threshold")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad("missing `threshold`"))?;
            GameDoc::TwoStageCost(TwoStageCostGame::new(
                base,
                costs_field(obj, "c1")?,
                costs_field(obj, "c2_low")?,
                costs_field(obj, "c2_high")?,
                threshold,
                u32_field(obj, "budget")?,
            )?)
        }
        other => {
            return Err(crate::GameError::InvalidGame(format!(
                "unknown game `{other}`"
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_roundtrip() {
        let doc = json!({
            "game": "selection",
            "base": { "problem": "sat-v", "payload": { "num_vars": 2, "clauses": [[1, 2]] } },
            "partition": [[0], [1]],
        });
        let game = decode_game(&doc).unwrap();
        assert_eq!(game.kind(), "selection");
        assert_eq!(encode_game(&game).unwrap(), doc);
    }

    #[test]
    fn interdiction_roundtrip_and_k_check() {
        let doc = json!({
            "game": "interdiction",
            "base": { "problem": "sat-v", "payload": { "num_vars": 2, "clauses": [[1, 2]] } },
            "nested": [[0], [0, 1]],
            "k": 3,
            "budget_protector": 1,
            "budget_blocker": 2,
            "budget_mode": "global",
        });
        let game = decode_game(&doc).unwrap();
        assert_eq!(encode_game(&game).unwrap(), doc);
        let mut wrong = doc.clone();
        wrong["k"] = json!(5);
        assert!(decode_game(&wrong).is_err());
    }
}
