//! `ζ_m ∘ ζ̂_m` on random staircase ideals, orbit checks and tangent
//! dimensions at the resulting pairs.

use std::collections::BTreeMap;

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::hilbert::{random_staircase_ideal, tangent_dimension, zeta, zeta_hat, Triple};
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rng::trial_rng;
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, HarnessResult};
use crate::formats::FieldMatrixJson;
use crate::runner::{Experiment, Outcome};

pub struct Hilbert {
    cfg: ExperimentConfig,
    field: PrimeField,
    pairs: Vec<(usize, usize)>,
}

impl Hilbert {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        let sizes: Vec<usize> = match cfg.n {
            Some(n) => vec![n],
            None => (3..=cfg.experiment.default_n()).collect(),
        };
        let pairs: Vec<(usize, usize)> = sizes
            .into_iter()
            .flat_map(|n| (2..=n.div_ceil(2)).map(move |m| (n, m)))
            .filter(|&(_, m)| cfg.m.is_none_or(|x| x == m))
            .collect();
        if pairs.is_empty() {
            return Err(HarnessError::Usage(format!("no valid (n, m) with n = {:?}, m = {:?}", cfg.n, cfg.m)));
        }
        Ok(Hilbert { cfg: cfg.clone(), field: super::field(cfg)?, pairs })
    }
}

pub struct Trial {
    failures: Vec<&'static str>,
    monomial: bool,
    /// `None` when `p ≤ n`.
    tangent: Option<usize>,
    triple: Triple,
}

fn is_nilpotent(f: &PrimeField, a: &Matrix<u64>) -> HarnessResult<bool> {
    Ok(a.nilpotency_index(f)?.is_some())
}

impl Experiment for Hilbert {
    type Trial = Trial;

    fn trial_count(&self) -> u64 {
        (self.pairs.len() * self.cfg.trials) as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<Trial> {
        let f = &self.field;
        let (n, m) = self.pairs[index as usize / self.cfg.trials];
        let mut rng = trial_rng(self.cfg.seed, index);
        let ideal = random_staircase_ideal(f, n, m, &mut rng)?;
        let monomial = ideal.basis().iter().all(|v| v.iter().filter(|&&c| c != 0).count() == 1);
        let triple = zeta_hat(f, &ideal)?;
        let mut failures = Vec::new();
        if !triple.a.commutator(f, &triple.b)?.is_zero(f) {
            failures.push("commute");
        }
        if !(is_nilpotent(f, &triple.a)? && is_nilpotent(f, &triple.b)?) {
            failures.push("nilpotent");
        }
        if failures.is_empty() {
            if zeta(f, &triple, m)? != ideal {
                failures.push("zeta_of_zeta_hat");
            }
            let (g, _) = matrix::random_invertible(f, n, &mut rng);
            let moved = triple.conjugate(f, &g)?;
            if zeta(f, &moved, m)? != ideal {
                failures.push("zeta_constant_on_orbit");
            }
            let back = zeta_hat(f, &zeta(f, &moved, m)?)?;
            if moved.orbit_element(f, &back, m)?.is_none() {
                failures.push("zeta_hat_of_zeta_in_orbit");
            }
            if triple.stabilizer_dimension(f)? != 0 {
                failures.push("trivial_stabilizer");
            }
        }
        let tangent = if f.modulus() as usize > n { Some(tangent_dimension(f, &triple.a, &triple.b)?) } else { None };
        Ok(Trial { failures, monomial, tangent, triple })
    }

    fn summarize(&self, trials: Vec<(u64, Trial)>) -> Outcome {
        let f = &self.field;
        #[derive(Default)]
        struct Acc {
            ideals: u64,
            monomial: u64,
            failures: u64,
            tangent: BTreeMap<usize, u64>,
        }
        let mut acc: Vec<Acc> = self.pairs.iter().map(|_| Acc::default()).collect();
        let mut counterexamples = Vec::new();
        for (i, t) in trials {
            let k = i as usize / self.cfg.trials;
            let (n, m) = self.pairs[k];
            let a = &mut acc[k];
            a.ideals += 1;
            a.monomial += t.monomial as u64;
            if let Some(d) = t.tangent {
                *a.tangent.entry(d).or_default() += 1;
            }
            if !t.failures.is_empty() {
                a.failures += 1;
                counterexamples.push(counterexample(
                    &self.cfg,
                    i,
                    json!({
                        "n": n,
                        "m": m,
                        "failed": t.failures,
                        "a": FieldMatrixJson::from_matrix(f, &t.triple.a),
                        "b": FieldMatrixJson::from_matrix(f, &t.triple.b),
                        "v": t.triple.v,
                    }),
                ));
            }
        }
        let pairs: Map<String, Value> = self
            .pairs
            .iter()
            .zip(acc)
            .filter(|(_, a)| a.ideals > 0)
            .map(|(&(n, m), a)| {
                let tangent: Map<String, Value> = a.tangent.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
                (
                    format!("n={n} m={m}"),
                    json!({
                        "round_trips": a.ideals,
                        "monomial_ideals": a.monomial,
                        "failures": a.failures,
                        "tangent_dimension": {
                            "histogram": tangent,
                            "min": a.tangent.keys().next(),
                            "n^2-1": n * n - 1,
                        },
                    }),
                )
            })
            .collect();
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(f.modulus()));
        statistics.insert("pairs".into(), Value::Object(pairs));
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
