//! Instance documents: `{"problem": <name>, "payload": {...}}`, with model
//! transform prefixes resolved against the catalog payload schema.

use nps_core::{CoreError, InstanceBundle};
use serde_json::{json, Value};

use crate::registry::{base_name, resolve_problem};

pub fn decode_instance(doc: &Value) -> Result<InstanceBundle, CoreError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| CoreError::InvalidInstance("instance document must be an object".into()))?;
    let name = obj
        .get("problem")
        .and_then(Value::as_str)
        .ok_or_else(|| CoreError::InvalidInstance("missing `problem` field".into()))?;
    let payload_doc = obj
        .get("payload")
        .ok_or_else(|| CoreError::InvalidInstance("missing `payload` field".into()))?;
    let spec = resolve_problem(name)?;
    let payload = nps_catalog::decode_payload(base_name(name), payload_doc)?;
    InstanceBundle::new(spec, payload)
}

pub fn encode_instance(inst: &InstanceBundle) -> Result<Value, CoreError> {
    let name = inst.spec().name();
    let payload = nps_catalog::encode_payload(base_name(name), inst.payload())?;
    Ok(json!({ "problem": name, "payload": payload }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_graph_instance() {
        let doc = json!({
            "problem": "vertex-cover",
            "payload": { "graph": { "n": 3, "directed": false, "edges": [[0,1],[0,2],[1,2]] }, "k": 2 }
        });
        let inst = decode_instance(&doc).unwrap();
        assert_eq!(inst.width(), 3);
        assert_eq!(encode_instance(&inst).unwrap(), doc);
    }

    #[test]
    fn transformed_instance_decodes_with_base_schema() {
        let doc = json!({
            "problem": "literal:vertex-cover",
            "payload": { "graph": { "n": 2, "directed": false, "edges": [[0,1]] }, "k": 1 }
        });
        let inst = decode_instance(&doc).unwrap();
        assert_eq!(inst.width(), 4);
        assert_eq!(encode_instance(&inst).unwrap(), doc);
    }

    #[test]
    fn unknown_problem_is_an_error() {
        let doc = json!({ "problem": "no-such", "payload": {} });
        assert!(decode_instance(&doc).is_err());
    }
}
