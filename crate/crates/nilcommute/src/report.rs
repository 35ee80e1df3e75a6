use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::{HarnessError, HarnessResult};

/// One failing trial with enough data to re-run it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    pub seed: u64,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: ExperimentId,
    pub config: ExperimentConfig,
    pub passed: bool,
    pub statistics: Map<String, Value>,
    pub counterexamples: Vec<Counterexample>,
    /// Only filled when timing was requested; keeps default reports
    /// byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> HarnessResult<Report> {
        serde_json::from_str(text).map_err(|e| HarnessError::Usage(format!("not a report: {e}")))
    }

    /// `key,value` rows: the header fields, every statistic flattened to a
    /// dotted path, then one row per counterexample.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |k: &str, v: String| w.write_record([k, v.as_str()]).expect("in-memory write");
        row("key", "value".into());
        row("experiment", self.experiment.to_string());
        row("passed", self.passed.to_string());
        row("seed", self.config.seed.to_string());
        let mut flat = Vec::new();
        flatten("statistics", &Value::Object(self.statistics.clone()), &mut flat);
        for (k, v) in flat {
            row(&k, v);
        }
        for (i, c) in self.counterexamples.iter().enumerate() {
            row(&format!("counterexample.{i}"), serde_json::to_string(c).expect("serializable"));
        }
        if let Some(ms) = self.wall_clock_ms {
            row("wall_clock_ms", ms.to_string());
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
