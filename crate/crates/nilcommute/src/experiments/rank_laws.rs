//! Block rank laws on random commuting nilpotent pairs.

use std::collections::BTreeMap;

use nilcommute_core::algebra::PrimeField;
use nilcommute_core::commutant::{
    jordan_basis, partition_invariants, sample_nilpotent_commuting, triangularize, Partition, SampleMode,
};
use nilcommute_core::matrix::{self, Matrix};
use nilcommute_core::rank_laws::{check_cor_3_2, check_lemma_3_1, check_lemma_3_3, check_prop_3_5, Law};
use nilcommute_core::rng::trial_rng;
use serde_json::{json, Map, Value};

use super::counterexample;
use crate::config::ExperimentConfig;
use crate::error::HarnessResult;
use crate::formats::FieldMatrixJson;
use crate::runner::{Experiment, Outcome};

pub struct RankLaws {
    cfg: ExperimentConfig,
    field: PrimeField,
    partitions: Vec<Partition>,
    laws: Vec<Law>,
}

impl RankLaws {
    pub fn new(cfg: &ExperimentConfig) -> HarnessResult<Self> {
        Ok(RankLaws { cfg: cfg.clone(), field: super::field(cfg)?, partitions: cfg.partitions()?, laws: cfg.laws()? })
    }
}

/// Violations found in one trial.
pub struct Trial {
    violations: Vec<Value>,
}

impl RankLaws {
    fn pair(&self, part: &Partition, index: u64) -> HarnessResult<(Matrix<u64>, Matrix<u64>)> {
        let f = &self.field;
        let mut rng = trial_rng(self.cfg.seed, index);
        let a = sample_nilpotent_commuting(f, part, &mut rng, SampleMode::Uniform)?;
        let (g, g_inv) = matrix::random_invertible(f, part.n(), &mut rng);
        let conj = |m: &Matrix<u64>| -> HarnessResult<Matrix<u64>> { Ok(g.mul(f, m)?.mul(f, &g_inv)?) };
        Ok((conj(&a)?, conj(&part.jordan_matrix(f))?))
    }
}

impl Experiment for RankLaws {
    type Trial = Trial;

    fn trial_count(&self) -> u64 {
        self.cfg.trials as u64
    }

    fn run_trial(&self, index: u64) -> HarnessResult<Trial> {
        let f = &self.field;
        let part = &self.partitions[(index % self.partitions.len() as u64) as usize];
        let (a, b) = self.pair(part, index)?;
        let mut violations = Vec::new();
        let mut push = |law: Law, detail: Value| {
            let mut v = json!({"law": law.id(), "partition": part.to_string(), "prime": f.modulus()});
            v.as_object_mut().expect("object").extend(detail.as_object().expect("object").clone());
            violations.push(v);
        };
        for &law in &self.laws {
            let reports = match law {
                Law::Lemma31 => {
                    let jd = triangularize(f, &a, &jordan_basis(f, &b)?)?;
                    vec![check_lemma_3_1(f, &a, &jd)?]
                }
                Law::Cor32 => vec![check_cor_3_2(f, &a, &b)?],
                Law::Lemma33 => {
                    let s = partition_invariants(part).s_b as u32;
                    vec![check_lemma_3_3(f, &a.pow(f, s)?, &b)?]
                }
                Law::Prop35 => {
                    for m in 1..=part.n() {
                        let c = check_prop_3_5(f, &a, &b, m)?;
                        if !c.holds() {
                            push(
                                law,
                                json!({
                                    "m": m,
                                    "rank_b_power": c.rank_b_power,
                                    "rank_a_power": c.rank_a_power,
                                    "rank_perturbed": c.rank_perturbed,
                                }),
                            );
                        }
                    }
                    Vec::new()
                }
            };
            for v in reports.into_iter().flat_map(|r| r.violations) {
                push(law, json!({"i": v.i, "j": v.j, "m": v.m, "rank": v.rank, "bound": v.bound}));
            }
            if index == 0 && self.cfg.injected() == Some(law) {
                push(law, json!({"injected": true}));
            }
        }
        if !violations.is_empty() {
            let (a, b) = (FieldMatrixJson::from_matrix(f, &a), FieldMatrixJson::from_matrix(f, &b));
            for v in &mut violations {
                let o = v.as_object_mut().expect("object");
                o.insert("a".into(), json!(a));
                o.insert("b".into(), json!(b));
            }
        }
        Ok(Trial { violations })
    }

    fn summarize(&self, trials: Vec<(u64, Trial)>) -> Outcome {
        let mut per_law: BTreeMap<&str, (u64, u64)> = self.laws.iter().map(|l| (l.id(), (0, 0))).collect();
        let mut counterexamples = Vec::new();
        let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
        for (i, t) in trials {
            let part = &self.partitions[(i % self.partitions.len() as u64) as usize];
            *sizes.entry(part.n()).or_default() += 1;
            for counts in per_law.values_mut() {
                counts.0 += 1;
            }
            for v in t.violations {
                per_law.get_mut(v["law"].as_str().expect("law id")).expect("selected law").1 += 1;
                counterexamples.push(counterexample(&self.cfg, i, v));
            }
        }
        let mut statistics = Map::new();
        statistics.insert("prime".into(), json!(self.field.modulus()));
        statistics.insert("partitions".into(), json!(self.partitions.len()));
        statistics.insert(
            "trials_by_n".into(),
            Value::Object(sizes.into_iter().map(|(n, c)| (n.to_string(), json!(c))).collect()),
        );
        statistics.insert(
            "laws".into(),
            Value::Object(
                per_law.into_iter().map(|(k, (t, v))| (k.to_string(), json!({"trials": t, "violations": v}))).collect(),
            ),
        );
        Outcome { passed: counterexamples.is_empty(), statistics, counterexamples }
    }
}
