//! Determinant identities for minors of the specialized `Υ̂(n,m−1)`.

use nilcommute_core::upsilon::{prop_4_3_identities, MinorIdentity};
use serde_json::{json, Map};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, HarnessResult};
use crate::runner::{Experiment, Outcome};

/// Smallest `n` with a valid `m ≥ 3`.
const FIRST_N: usize = 5;

pub struct Identities {
    cfg: ExperimentConfig,
    max_n: usize,
}

impl Identities {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        let max_n = cfg.n_or_default();
        if max_n < FIRST_N {
            return Err(HarnessError::Usage(format!("upsilon-identities needs n >= {FIRST_N}")));
        }
        Ok(Identities { cfg: cfg.clone(), max_n })
    }
}

impl Experiment for Identities {
    type Trial = Vec<MinorIdentity>;

    fn trial_count(&self) -> u64 {
        (self.max_n + 1 - FIRST_N) as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<Vec<MinorIdentity>> {
        Ok(prop_4_3_identities(FIRST_N + index as usize)?)
    }

    fn summarize(&self, trials: Vec<(u64, Vec<MinorIdentity>)>) -> Outcome {
        let (mut total, mut exact, mut up_to_sign) = (0, 0, 0);
        let mut counterexamples = Vec::new();
        for (i, ids) in trials {
            for id in ids {
                total += 1;
                if id.holds() {
                    exact += 1;
                }
                if id.holds_up_to_sign() {
                    up_to_sign += 1;
                }
                if !id.holds() {
                    counterexamples.push(counterexample(
                        &self.cfg,
                        i,
                        json!({
                            "n": id.n,
                            "m": id.m,
                            "set": id.set_name,
                            "expected": id.expected.to_string(),
                            "actual": id.actual.to_string(),
                        }),
                    ));
                }
            }
        }
        let mut statistics = Map::new();
        statistics.insert("max_n".into(), json!(self.max_n));
        statistics.insert("identities".into(), json!(total));
        statistics.insert("exact".into(), json!(exact));
        statistics.insert("up_to_sign".into(), json!(up_to_sign));
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
