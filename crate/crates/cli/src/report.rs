use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::commands::Outcome;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the problem file.
    pub input_digest: String,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
    pub version: &'static str,
    /// Wall time; the only field that varies between identical runs.
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, input: &str, outcome: Outcome, elapsed: Duration) -> Self {
        Report {
            command: command.to_string(),
            input_digest: hex::encode(Sha256::digest(input.as_bytes())),
            results: outcome.results,
            warnings: outcome.warnings,
            version: env!("CARGO_PKG_VERSION"),
            timing_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per result, with series shown as their nonzero terms.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.results {
            let _ = writeln!(s, "{k}: {}", brief(v));
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

fn brief(v: &Value) -> String {
    match v {
        Value::Object(m) if m.contains_key("series") => {
            let mut s = brief(&m["series"]);
            if m.get("unverified_hypothesis") == Some(&Value::Bool(true)) {
                s.push_str("  [unverified hypothesis]");
            }
            s
        }
        Value::Object(m) if m.contains_key("coefficients") && m.contains_key("arity") => {
            let terms: Vec<String> = m["coefficients"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|t| format!("{}:{}", t[0], t[1]))
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" ")
            }
        }
        Value::Array(items)
            if items
                .iter()
                .all(|i| i.get("name").is_some() && i.get("verdict").is_some())
                && !items.is_empty() =>
        {
            items
                .iter()
                .map(|i| {
                    format!(
                        "{}={}",
                        i["name"].as_str().unwrap_or("?"),
                        i["verdict"].as_str().unwrap_or("?")
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
        Value::Array(items)
            if items
                .iter()
                .all(|i| i.get("name").is_some() && i.get("equal").is_some())
                && !items.is_empty() =>
        {
            items
                .iter()
                .map(|i| {
                    let mark = match (i["equal"].as_bool(), i["counted"].as_bool()) {
                        (Some(true), _) => "holds",
                        (Some(false), Some(false)) => "fails (hypothesis not met)",
                        _ => "FAILS",
                    };
                    format!("{} {mark}", i["name"].as_str().unwrap_or("?"))
                })
                .collect::<Vec<_>>()
                .join(", ")
        }
        other => other.to_string(),
    }
}
