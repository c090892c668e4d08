//! Run reports: deterministic JSON documents (no wall-clock fields) and
//! human-readable rendering with labels instead of raw ids.

use serde_json::{json, Map, Value};

/// FNV-1a 64-bit digest, hex encoded. Stable and dependency-free; used to
//  fingerprint inputs and outputs for round-trip checks.
pub fn fnv_digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a64:{hash:016x}")
}

pub struct RunReport {
    fields: Map<String, Value>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        RunReport { fields }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    pub fn input_digest(&mut self, name: &str, bytes: &[u8]) -> &mut Self {
        let inputs = self
            .fields
            .entry("inputs")
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(map) = inputs {
            map.insert(name.to_string(), json!(fnv_digest(bytes)));
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Value::Object(self.fields.clone())).expect("serializable")
    }
}
