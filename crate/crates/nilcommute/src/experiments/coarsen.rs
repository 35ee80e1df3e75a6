//! Repeated perturbation `B + f(A)` down to the singleton-block target.

use std::collections::BTreeMap;

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::commutant::{
    jordan_partition, partition_invariants, sample_nilpotent_commuting, Partition, SampleMode,
};
use nilcommute_core::rank_laws::{coarsen_to_singletons, eval_poly_at_matrix, CoarsenOptions};
use nilcommute_core::rng::trial_rng;
use nilcommute_core::Error;
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::HarnessResult;
use crate::formats::FieldMatrixJson;
use crate::runner::{Experiment, Outcome};

pub struct Coarsen {
    cfg: ExperimentConfig,
    field: PrimeField,
    partitions: Vec<Partition>,
}

impl Coarsen {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        Ok(Coarsen { cfg: cfg.clone(), field: super::field(cfg)?, partitions: cfg.partitions()? })
    }
}

pub enum Trial {
    Reached { stages: usize, failed: Vec<&'static str>, detail: Value },
    /// No admissible coefficient in some stage.
    Exhausted,
    Error { detail: Value },
}

impl Experiment for Coarsen {
    type Trial = Trial;

    fn trial_count(&self) -> u64 {
        self.cfg.trials as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<Trial> {
        let f = &self.field;
        let part = &self.partitions[(index % self.partitions.len() as u64) as usize];
        let mut rng = trial_rng(self.cfg.seed, index);
        let a = sample_nilpotent_commuting(f, part, &mut rng, SampleMode::Uniform)?;
        let b = part.jordan_matrix(f);
        let out = match coarsen_to_singletons(f, &a, &b, &CoarsenOptions::default(), &mut rng) {
            Ok(out) => out,
            Err(Error::ScanExhausted { .. }) => return Ok(Trial::Exhausted),
            Err(e) => {
                return Ok(Trial::Error {
                    detail: json!({
                        "partition": part.to_string(),
                        "error": e.to_string(),
                        "a": FieldMatrixJson::from_matrix(f, &a),
                    }),
                })
            }
        };
        let b2 = b.add(f, &eval_poly_at_matrix(f, &out.f, &a)?)?;
        let fin = &out.final_partition;
        let mut failed = Vec::new();
        if !a.commutator(f, &b2)?.is_zero(f) {
            failed.push("commutes");
        }
        if b2.nilpotency_index(f)?.is_none() {
            failed.push("nilpotent");
        }
        if out.f.coeff(0) != 0 {
            failed.push("x_divides_f");
        }
        if jordan_partition(f, &b2)? != *fin {
            failed.push("final_partition");
        }
        if fin.parts().iter().filter(|&&x| x == 1).count() != partition_invariants(fin).s_b {
            failed.push("singletons");
        }
        if let Some(first) = out.stages.first() {
            let i1 = first.set[0];
            if fin.parts().get(..i1) != Some(&part.parts()[..i1]) {
                failed.push("prefix");
            }
        }
        let detail = json!({
            "partition": part.to_string(),
            "final": fin.to_string(),
            "f": out.f.to_string(),
            "a": FieldMatrixJson::from_matrix(f, &a),
        });
        Ok(Trial::Reached { stages: out.stages.len(), failed, detail })
    }

    fn summarize(&self, trials: Vec<(u64, Trial)>) -> Outcome {
        let (mut reached, mut exhausted) = (0u64, 0u64);
        let mut stage_hist: BTreeMap<usize, u64> = BTreeMap::new();
        let mut counterexamples = Vec::new();
        for (i, t) in trials {
            match t {
                Trial::Reached { stages, failed, mut detail } => {
                    reached += 1;
                    *stage_hist.entry(stages).or_default() += 1;
                    if !failed.is_empty() {
                        detail["failed"] = json!(failed);
                        counterexamples.push(counterexample(&self.cfg, i, detail));
                    }
                }
                Trial::Exhausted => exhausted += 1,
                Trial::Error { detail } => counterexamples.push(counterexample(&self.cfg, i, detail)),
            }
        }
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(self.field.modulus()));
        statistics.insert("partitions".into(), json!(self.partitions.len()));
        statistics.insert("reached".into(), json!(reached));
        statistics.insert("scan_exhausted".into(), json!(exhausted));
        statistics.insert(
            "stages".into(),
            Value::Object(stage_hist.into_iter().map(|(s, c)| (s.to_string(), json!(c))).collect()),
        );
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
