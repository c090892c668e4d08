//! JSON payload codecs, one schema per base problem. Graphs serialize as
//! `{"n": int, "directed": bool, "edges": [[u, v], ...]}`, with an optional
//! third entry per edge carrying its weight.

use std::sync::Arc;

use nps_core::{CoreError, Payload};
use serde_json::{json, Map, Value};

use crate::payload::*;

fn bad(msg: impl Into<String>) -> CoreError {
    CoreError::InvalidInstance(msg.into())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CoreError> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, key: &str) -> Result<usize, CoreError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field `{key}` must be a non-negative integer")))
}

fn as_i64(v: &Value, key: &str) -> Result<i64, CoreError> {
    v.as_i64()
        .ok_or_else(|| bad(format!("field `{key}` must be an integer")))
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| match &g.weights {
            Some(w) => json!([u, v, w[i]]),
            None => json!([u, v]),
        })
        .collect();
    json!({ "n": g.num_vertices, "directed": g.directed, "edges": edges })
}

pub fn graph_from_json(v: &Value) -> Result<Graph, CoreError> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("graph must be an object"))?;
    let n = as_usize(get(obj, "n")?, "n")?;
    let directed = get(obj, "directed")?
        .as_bool()
        .ok_or_else(|| bad("field `directed` must be a bool"))?;
    let raw = get(obj, "edges")?
        .as_array()
        .ok_or_else(|| bad("field `edges` must be an array"))?;
    let mut edges = Vec::with_capacity(raw.len());
    let mut weights = Vec::new();
    let mut any_weight = false;
    for (i, e) in raw.iter().enumerate() {
        let tuple = e
            .as_array()
            .ok_or_else(|| bad(format!("edge {i} must be an array")))?;
        if tuple.len() != 2 && tuple.len() != 3 {
            return Err(bad(format!("edge {i} must have 2 or 3 entries")));
        }
        let u = as_usize(&tuple[0], "edge endpoint")?;
        let v = as_usize(&tuple[1], "edge endpoint")?;
        edges.push((u, v));
        if tuple.len() == 3 {
            any_weight = true;
            weights.push(as_i64(&tuple[2], "edge weight")?);
        } else {
            weights.push(0);
        }
    }
    let g = Graph {
        num_vertices: n,
        directed,
        edges,
        weights: if any_weight { Some(weights) } else { None },
    };
    g.validate()?;
    Ok(g)
}

fn serde_payload<T>(value: &Value) -> Result<Payload, CoreError>
where
    T: serde::de::DeserializeOwned + Send + Sync + 'static,
{
    let inst: T = serde_json::from_value(value.clone())
        .map_err(|e| bad(format!("payload does not match schema: {e}")))?;
    Ok(Arc::new(inst))
}

fn to_value<T: serde::Serialize>(inst: &T) -> Value {
    serde_json::to_value(inst).expect("payload serializes")
}

fn graph_bound_payload(value: &Value) -> Result<Payload, CoreError> {
    let obj = value
        .as_object()
        .ok_or_else(|| bad("payload must be an object"))?;
    let graph = graph_from_json(get(obj, "graph")?)?;
    let k = as_usize(get(obj, "k")?, "k")?;
    Ok(Arc::new(GraphWithBound { graph, k }))
}

/// Decodes a payload document for the named base problem.
pub fn decode_payload(base: &str, value: &Value) -> Result<Payload, CoreError> {
    match base {
        "sat-v" | "sat-l" | "3sat-v" | "3sat-l" => serde_payload::<CnfFormula>(value),
        "vertex-cover" | "independent-set" | "clique-v" | "clique-e" | "dominating-set" | "fvs"
        | "fas" => graph_bound_payload(value),
        "set-cover" => serde_payload::<SetCoverInstance>(value),
        "hitting-set" => serde_payload::<HittingSetInstance>(value),
        "ufl" => serde_payload::<UflInstance>(value),
        "p-center" | "p-median" => serde_payload::<PFacilityInstance>(value),
        "subset-sum" => serde_payload::<SubsetSumInstance>(value),
        "knapsack" => serde_payload::<KnapsackInstance>(value),
        "partition" | "partition-1" => serde_payload::<PartitionInstance>(value),
        "scheduling" => serde_payload::<SchedulingInstance>(value),
        "dham-path" => {
            let obj = value
                .as_object()
                .ok_or_else(|| bad("payload must be an object"))?;
            Ok(Arc::new(HamPathInstance {
                graph: graph_from_json(get(obj, "graph")?)?,
                source: as_usize(get(obj, "s")?, "s")?,
                sink: as_usize(get(obj, "t")?, "t")?,
            }))
        }
        "dham-cycle" | "uham-cycle" => {
            let obj = value
                .as_object()
                .ok_or_else(|| bad("payload must be an object"))?;
            Ok(Arc::new(graph_from_json(get(obj, "graph")?)?))
        }
        "tsp" => {
            let obj = value
                .as_object()
                .ok_or_else(|| bad("payload must be an object"))?;
            Ok(Arc::new(TspInstance {
                graph: graph_from_json(get(obj, "graph")?)?,
                threshold: as_i64(get(obj, "t")?, "t")?,
            }))
        }
        "steiner-tree" => {
            let obj = value
                .as_object()
                .ok_or_else(|| bad("payload must be an object"))?;
            let terminals = get(obj, "terminals")?
                .as_array()
                .ok_or_else(|| bad("field `terminals` must be an array"))?
                .iter()
                .map(|t| as_usize(t, "terminal"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Arc::new(SteinerInstance {
                graph: graph_from_json(get(obj, "graph")?)?,
                terminals,
                bound: as_i64(get(obj, "k")?, "k")?,
            }))
        }
        other => Err(bad(format!("unknown problem `{other}`"))),
    }
}

/// Encodes a payload for the named base problem.
pub fn encode_payload(base: &str, payload: &Payload) -> Result<Value, CoreError> {
    let cast_err = || CoreError::PayloadType {
        problem: base.to_string(),
    };
    match base {
        "sat-v" | "sat-l" | "3sat-v" | "3sat-l" => Ok(to_value(
            payload.downcast_ref::<CnfFormula>().ok_or_else(cast_err)?,
        )),
        "vertex-cover" | "independent-set" | "clique-v" | "clique-e" | "dominating-set" | "fvs"
        | "fas" => {
            let inst = payload
                .downcast_ref::<GraphWithBound>()
                .ok_or_else(cast_err)?;
            Ok(json!({ "graph": graph_to_json(&inst.graph), "k": inst.k }))
        }
        "set-cover" => Ok(to_value(
            payload
                .downcast_ref::<SetCoverInstance>()
                .ok_or_else(cast_err)?,
        )),
        "hitting-set" => Ok(to_value(
            payload
                .downcast_ref::<HittingSetInstance>()
                .ok_or_else(cast_err)?,
        )),
        "ufl" => Ok(to_value(
            payload.downcast_ref::<UflInstance>().ok_or_else(cast_err)?,
        )),
        "p-center" | "p-median" => Ok(to_value(
            payload
                .downcast_ref::<PFacilityInstance>()
                .ok_or_else(cast_err)?,
        )),
        "subset-sum" => Ok(to_value(
            payload
                .downcast_ref::<SubsetSumInstance>()
                .ok_or_else(cast_err)?,
        )),
        "knapsack" => Ok(to_value(
            payload
                .downcast_ref::<KnapsackInstance>()
                .ok_or_else(cast_err)?,
        )),
        "partition" | "partition-1" => Ok(to_value(
            payload
                .downcast_ref::<PartitionInstance>()
                .ok_or_else(cast_err)?,
        )),
        "scheduling" => Ok(to_value(
            payload
                .downcast_ref::<SchedulingInstance>()
                .ok_or_else(cast_err)?,
        )),
        "dham-path" => {
            let inst = payload
                .downcast_ref::<HamPathInstance>()
                .ok_or_else(cast_err)?;
            Ok(json!({ "graph": graph_to_json(&inst.graph), "s": inst.source, "t": inst.sink }))
        }
        "dham-cycle" | "uham-cycle" => {
            let g = payload.downcast_ref::<Graph>().ok_or_else(cast_err)?;
            Ok(json!({ "graph": graph_to_json(g) }))
        }
        "tsp" => {
            let inst = payload.downcast_ref::<TspInstance>().ok_or_else(cast_err)?;
            Ok(json!({ "graph": graph_to_json(&inst.graph), "t": inst.threshold }))
        }
        "steiner-tree" => {
            let inst = payload
                .downcast_ref::<SteinerInstance>()
                .ok_or_else(cast_err)?;
            Ok(json!({
                "graph": graph_to_json(&inst.graph),
                "terminals": inst.terminals,
                "k": inst.bound,
            }))
        }
        other => Err(bad(format!("unknown problem `{other}`"))),
    }
}
