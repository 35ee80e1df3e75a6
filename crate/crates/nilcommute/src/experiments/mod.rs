//! One module per experiment id.

pub mod char3;
pub mod coarsen;
pub mod generic_rank;
pub mod hilbert;
pub mod identities;
pub mod lemma_m;
pub mod rank_laws;
pub mod tangent;
pub mod verify_paper;

use nilcommute_core::algebra::PrimeField;
use serde_json::Value;

use crate::config::ExperimentConfig;
use crate::error::HarnessResult;
use crate::report::Counterexample;

pub(crate) fn field(cfg: &ExperimentConfig) -> HarnessResult<PrimeField> {
    Ok(PrimeField::new(cfg.prime)?)
}

pub(crate) fn counterexample(cfg: &ExperimentConfig, trial: u64, detail: Value) -> Counterexample {
    Counterexample { trial, seed: cfg.seed, detail }
}
