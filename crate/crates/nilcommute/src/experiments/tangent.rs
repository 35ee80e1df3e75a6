//! Minimum tangent dimension over random points of the nilpotent cone and of
//! the commuting nilpotent variety.

use std::collections::BTreeMap;

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::hilbert::{nilpotent_cone_tangent_dimension, tangent_dimension};
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rng::trial_rng;
use rand::Rng;
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, HarnessResult};
use crate::runner::{Experiment, Outcome};

const FIRST_N: usize = 2;

pub struct Tangent {
    cfg: ExperimentConfig,
    field: PrimeField,
    max_n: usize,
}

impl Tangent {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        let max_n = cfg.n_or_default();
        if max_n < FIRST_N {
            return Err(HarnessError::Usage(format!("tangent-dim needs n >= {FIRST_N}")));
        }
        if cfg.prime as usize <= max_n {
            return Err(HarnessError::Usage(format!("tangent-dim needs p > n, got p = {}", cfg.prime)));
        }
        Ok(Tangent { cfg: cfg.clone(), field: super::field(cfg)?, max_n })
    }
}

/// `G U G⁻¹` with `U` random strictly upper triangular.
fn random_nilpotent<G: Rng>(f: &PrimeField, n: usize, rng: &mut G) -> HarnessResult<Matrix<u64>> {
    let u = Matrix::from_fn(n, n, |r, c| if c > r { f.random(rng) } else { 0 });
    let (g, g_inv) = matrix::random_invertible(f, n, rng);
    Ok(g.mul(f, &u)?.mul(f, &g_inv)?)
}

pub struct Trial {
    cone: BTreeMap<usize, u64>,
    pairs: BTreeMap<usize, u64>,
}

impl Experiment for Tangent {
    type Trial = Trial;

    fn trial_count(&self) -> u64 {
        (self.max_n + 1 - FIRST_N) as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<Trial> {
        let f = &self.field;
        let n = FIRST_N + index as usize;
        let mut rng = trial_rng(self.cfg.seed, index);
        let mut t = Trial { cone: BTreeMap::new(), pairs: BTreeMap::new() };
        for _ in 0..self.cfg.trials {
            let a = random_nilpotent(f, n, &mut rng)?;
            *t.cone.entry(nilpotent_cone_tangent_dimension(f, &a)?).or_default() += 1;
            let mut b = Matrix::zeros(f, n, n);
            let mut ak = a.clone();
            for _ in 1..n {
                b = b.add(f, &ak.scale(f, &f.random(&mut rng)))?;
                ak = ak.mul(f, &a)?;
            }
            *t.pairs.entry(tangent_dimension(f, &a, &b)?).or_default() += 1;
        }
        Ok(t)
    }

    fn summarize(&self, trials: Vec<(u64, Trial)>) -> Outcome {
        let hist = |h: &BTreeMap<usize, u64>| -> Value {
            Value::Object(h.iter().map(|(d, c)| (d.to_string(), json!(c))).collect())
        };
        let mut sizes = Map::new();
        let mut counterexamples = Vec::new();
        for (i, t) in trials {
            let n = FIRST_N + i as usize;
            let cone_min = t.cone.keys().next().copied();
            let pair_min = t.pairs.keys().next().copied();
            let entry = json!({
                "samples": self.cfg.trials,
                "cone_min": cone_min,
                "cone_expected": n * n - n,
                "pair_min": pair_min,
                "pair_expected": n * n - 1,
                "cone_histogram": hist(&t.cone),
                "pair_histogram": hist(&t.pairs),
            });
            if cone_min != Some(n * n - n) || pair_min != Some(n * n - 1) {
                counterexamples.push(counterexample(&self.cfg, i, json!({"n": n, "cone_min": cone_min, "pair_min": pair_min})));
            }
            sizes.insert(n.to_string(), entry);
        }
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(self.field.modulus()));
        statistics.insert("n".into(), Value::Object(sizes));
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
