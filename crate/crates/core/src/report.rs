//! The JSON document emitted by every CLI command.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever a payload layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub command: String,
    pub group: Option<String>,
    pub parameters: Value,
    /// Present for randomized commands.
    pub seed: Option<u64>,
    pub wall_time_ms: f64,
    pub result: Value,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<RunReport> {
        serde_json::from_str(s)
    }
}

/// Collects the fixed fields of a report while a command runs.
pub struct ReportBuilder {
    command: String,
    group: Option<String>,
    parameters: Value,
    seed: Option<u64>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, group: Option<String>, parameters: Value) -> ReportBuilder {
        ReportBuilder {
            command: command.to_string(),
            group,
            parameters,
            seed: None,
            started: Instant::now(),
        }
    }

    pub fn seed(mut self, seed: u64) -> ReportBuilder {
        self.seed = Some(seed);
        self
    }

    pub fn finish<T: Serialize>(self, result: &T) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: self.command,
            group: self.group,
            parameters: self.parameters,
            seed: self.seed,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
            result: serde_json::to_value(result).expect("results serialize"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn roundtrip() {
        let r = ReportBuilder::new("walk", Some("alt:5".into()), json!({"k": 3}))
            .seed(42)
            .finish(&json!({"tv": 0.01}));
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.seed, Some(42));
        assert_eq!(back.schema_version, SCHEMA_VERSION);
    }
}
