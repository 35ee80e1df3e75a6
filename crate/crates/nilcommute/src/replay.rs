use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Map};

use crate::error::{HarnessError, HarnessResult};
use crate::report::Report;
use crate::runner::{run, run_indices};

/// Re-runs the report stored at `path`. See [`replay_report`].
pub fn replay(path: &Path) -> HarnessResult<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Usage(format!("{}: {e}", path.display())))?;
    replay_report(&Report::from_json(&text)?)
}

/// A failing report is replayed trial by trial and must reproduce every
/// counterexample exactly; a divergence is a harness bug. A passing report
/// has no payload, so its whole config is re-run and must pass again.
pub fn replay_report(report: &Report) -> HarnessResult<Report> {
    if report.counterexamples.is_empty() {
        if !report.passed {
            return Err(HarnessError::Usage("failing report carries no counterexample payload".into()));
        }
        let fresh = run(&report.config)?;
        if !fresh.passed {
            return Err(HarnessError::Internal("passing report failed on replay; the run is nondeterministic".into()));
        }
        return Ok(fresh);
    }
    if let Some(c) = report.counterexamples.iter().find(|c| c.seed != report.config.seed) {
        return Err(HarnessError::Usage(format!("counterexample seed {} differs from config seed", c.seed)));
    }
    let indices: Vec<u64> = report.counterexamples.iter().map(|c| c.trial).collect::<BTreeSet<_>>().into_iter().collect();
    let out = run_indices(&report.config, Some(&indices))?;
    if out.counterexamples != report.counterexamples {
        return Err(HarnessError::Internal(format!(
            "replay of trials {indices:?} produced {} counterexamples instead of the recorded {}; the run is nondeterministic",
            out.counterexamples.len(),
            report.counterexamples.len()
        )));
    }
    let mut statistics = Map::new();
    statistics.insert("replayed_trials".into(), json!(indices));
    statistics.insert("reproduced".into(), json!(true));
    Ok(Report {
        experiment: report.experiment,
        config: report.config.clone(),
        passed: false,
        statistics,
        counterexamples: out.counterexamples,
        wall_clock_ms: None,
    })
}
