//! The characteristic-3 index set: one minor vanishes mod 3, the other not.

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::upsilon::{char3_index_set, char_p_witness, CharWitness};
use serde_json::{json, Map};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::HarnessResult;
use crate::runner::{Experiment, Outcome};

pub struct Char3 {
    cfg: ExperimentConfig,
}

impl Char3 {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        Ok(Char3 { cfg: cfg.clone() })
    }
}

impl Experiment for Char3 {
    type Trial = CharWitness;

    fn trial_count(&self) -> u64 {
        1
    }

    fn run_trial(&self, _index: u64) -> HarnessResult<CharWitness> {
        Ok(char_p_witness()?)
    }

    fn summarize(&self, trials: Vec<(u64, CharWitness)>) -> Outcome {
        let mut statistics = Map::new();
        let mut counterexamples = Vec::new();
        let f3 = PrimeField::new(3).expect("prime");
        for (i, w) in trials {
            let set: Vec<String> = char3_index_set().iter().map(ToString::to_string).collect();
            let detail = json!({
                "index_set": set,
                "det_l3": w.det_l3.to_string(),
                "det_l4": w.det_l4.to_string(),
                "det_l3_mod_3": w.det_l3.reduce_mod_p(f3).to_string(),
                "det_l4_mod_3": w.det_l4.reduce_mod_p(f3).to_string(),
                "l3_vanishes_mod_3": w.l3_vanishes_mod_p,
                "l4_vanishes_mod_3": w.l4_vanishes_mod_p,
            });
            if !w.holds() {
                counterexamples.push(counterexample(&self.cfg, i, detail.clone()));
            }
            statistics = detail.as_object().expect("object").clone();
        }
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
