use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Formula,
    Enumeration,
    Search,
    Theorem,
}

pub fn tagged(value: impl Serialize, provenance: Source) -> Value {
    json!({ "value": value, "provenance": provenance })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verb: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(verb: &str) -> Self {
        Report { verb: verb.to_string(), inputs: BTreeMap::new(), results: BTreeMap::new(), timing_ms: None }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(key.to_string(), json!(value));
    }

    pub fn result(&mut self, key: &str, value: impl Serialize, provenance: Source) {
        self.results.insert(key.to_string(), tagged(value, provenance));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Human-readable layout; not a stable format.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.verb);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k:<22} {}", plain(v));
        }
        for (k, v) in &self.results {
            match (v.get("value"), v.get("provenance")) {
                (Some(value), Some(p)) => {
                    let _ = writeln!(out, "  {k:<22} {}  [{}]", plain(value), plain(p));
                }
                _ => {
                    let _ = writeln!(out, "  {k:<22} {}", plain(v));
                }
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "  {:<22} {ms} ms", "time");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("count");
        r.input("r", 3);
        r.result("count", 9, Source::Formula);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"provenance\": \"formula\""));
        assert!(r.to_table().contains("[formula]"));
    }
}
