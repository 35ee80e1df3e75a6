//! Columns of an evaluated `Υ` against coordinates of `A^i B^j v`.

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::rng::trial_rng;
use nilcommute_core::upsilon::{build_upsilon, verify_lemma_m, LabeledPolyMatrix, LemmaMCase};
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, HarnessResult};
use crate::runner::{Experiment, Outcome};

struct Case {
    kind: LemmaMCase,
    n: usize,
    l: usize,
    upsilon: LabeledPolyMatrix,
}

impl Case {
    fn name(&self) -> String {
        match self.kind {
            LemmaMCase::Regular => format!("regular n={}", self.n),
            LemmaMCase::Aln => format!("a_ln n={} l={}", self.n, self.l),
        }
    }
}

pub struct LemmaM {
    cfg: ExperimentConfig,
    field: PrimeField,
    cases: Vec<Case>,
}

impl LemmaM {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        let max_n = cfg.n_or_default();
        if max_n < 3 {
            return Err(HarnessError::Usage("lemma-m needs n >= 3".into()));
        }
        let mut cases = Vec::new();
        if cfg.l.is_none_or(|l| l == 2) {
            for n in 3..=max_n {
                cases.push(Case { kind: LemmaMCase::Regular, n, l: 2, upsilon: build_upsilon(n, 2)? });
            }
        }
        for n in 5..=max_n {
            for l in (3..=n.div_ceil(2)).filter(|&l| cfg.l.is_none_or(|x| x == l)) {
                cases.push(Case { kind: LemmaMCase::Aln, n, l, upsilon: build_upsilon(n, l)? });
            }
        }
        if cases.is_empty() {
            return Err(HarnessError::Usage(format!("no lemma-m case for n <= {max_n} and l = {:?}", cfg.l)));
        }
        Ok(LemmaM { cfg: cfg.clone(), field: super::field(cfg)?, cases })
    }
}

impl Experiment for LemmaM {
    type Trial = bool;

    fn trial_count(&self) -> u64 {
        (self.cases.len() * self.cfg.trials) as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<bool> {
        let case = &self.cases[index as usize / self.cfg.trials];
        let mut rng = trial_rng(self.cfg.seed, index);
        Ok(verify_lemma_m(case.kind, &case.upsilon, case.l, &self.field, &mut rng)?)
    }

    fn summarize(&self, trials: Vec<(u64, bool)>) -> Outcome {
        let mut per_case: Vec<(u64, u64)> = vec![(0, 0); self.cases.len()];
        let mut counterexamples = Vec::new();
        for (i, ok) in trials {
            let c = i as usize / self.cfg.trials;
            per_case[c].0 += 1;
            if !ok {
                per_case[c].1 += 1;
                let case = &self.cases[c];
                counterexamples.push(counterexample(
                    &self.cfg,
                    i,
                    json!({"case": case.name(), "n": case.n, "l": case.l, "draw": i as usize % self.cfg.trials}),
                ));
            }
        }
        let cases: Map<String, Value> = self
            .cases
            .iter()
            .zip(per_case)
            .filter(|(_, (draws, _))| *draws > 0)
            .map(|(c, (draws, failures))| (c.name(), json!({"draws": draws, "failures": failures})))
            .collect();
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(self.field.modulus()));
        statistics.insert("cases".into(), Value::Object(cases));
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
