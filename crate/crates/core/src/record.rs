//! The JSON record emitted for every run.
//!
//! Field names are part of the output format: `algorithm`, `seed`,
//! `parameters`, `samples`, `post_processing`, `result`, `oracle_queries`,
//! `wall_time_ms`. Maps serialize with sorted keys, so equal records print
//! identically.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, Value>,
    pub samples: Vec<Value>,
    pub post_processing: BTreeMap<String, Value>,
    pub result: Value,
    pub oracle_queries: u64,
    pub wall_time_ms: u64,
}

impl RunRecord {
    pub fn new(algorithm: &str, seed: u64) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            seed,
            parameters: BTreeMap::new(),
            samples: Vec::new(),
            post_processing: BTreeMap::new(),
            result: Value::Null,
            oracle_queries: 0,
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), to_value(value));
        self
    }

    pub fn post(&mut self, key: &str, value: impl Serialize) {
        self.post_processing.insert(key.to_string(), to_value(value));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_else(|e| format!("{{\"error\":\"{e}\"}}"))
    }
}

pub(crate) fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}
