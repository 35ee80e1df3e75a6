//! Rank distribution of random elements of `N_B` per Jordan type.

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::commutant::Partition;
use nilcommute_core::rank_laws::{generic_rank_experiment, GenericRankStats};
use nilcommute_core::rng::trial_rng;
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::HarnessResult;
use crate::runner::{Experiment, Outcome};

/// Share of uniform samples that must reach `n − r_B`.
pub const MIN_ATTAINED: f64 = 0.95;

pub struct GenericRank {
    cfg: ExperimentConfig,
    field: PrimeField,
    partitions: Vec<Partition>,
}

impl GenericRank {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        Ok(GenericRank { cfg: cfg.clone(), field: super::field(cfg)?, partitions: cfg.partitions()? })
    }
}

fn passes(s: &GenericRankStats) -> bool {
    s.bound_holds() && s.attained_fraction() >= MIN_ATTAINED
}

impl Experiment for GenericRank {
    type Trial = GenericRankStats;

    fn trial_count(&self) -> u64 {
        self.partitions.len() as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<GenericRankStats> {
        let part = &self.partitions[index as usize];
        Ok(generic_rank_experiment(&self.field, part, self.cfg.trials, &mut trial_rng(self.cfg.seed, index))?)
    }

    fn summarize(&self, trials: Vec<(u64, GenericRankStats)>) -> Outcome {
        let mut per_partition = Map::new();
        let mut counterexamples = Vec::new();
        let mut worst = 1.0f64;
        for (i, s) in trials {
            worst = worst.min(s.attained_fraction());
            let histogram: Map<String, Value> = s.histogram.iter().map(|(r, c)| (r.to_string(), json!(c))).collect();
            let entry = json!({
                "expected": s.expected,
                "max_observed": s.max_observed,
                "witness_rank": s.witness_rank,
                "attained_fraction": s.attained_fraction(),
                "histogram": histogram,
            });
            if !passes(&s) {
                let mut detail = entry.clone();
                detail["partition"] = json!(s.partition.to_string());
                counterexamples.push(counterexample(&self.cfg, i, detail));
            }
            per_partition.insert(s.partition.to_string(), entry);
        }
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(self.field.modulus()));
        statistics.insert("samples_per_partition".into(), json!(self.cfg.trials));
        statistics.insert("min_attained_fraction".into(), json!(worst));
        statistics.insert("partitions".into(), Value::Object(per_partition));
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
