use std::time::Instant;

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::{HarnessError, HarnessResult};
use crate::experiments;
use crate::report::{Counterexample, Report};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "NILCOMMUTE_THREADS";

/// Pass flag, statistics and counterexamples of a set of trials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub statistics: Map<String, Value>,
    pub counterexamples: Vec<Counterexample>,
}

/// An experiment is a fixed list of trials; trial `i` depends only on the
/// config and `i`, so any subset can be re-run.
pub trait Experiment: Sync {
    type Trial: Send;

    fn trial_count(&self) -> u64;

    fn run_trial(&self, index: u64) -> HarnessResult<Self::Trial>;

    /// Folds trials, given in index order, into an outcome.
    fn summarize(&self, trials: Vec<(u64, Self::Trial)>) -> Outcome;
}

fn pool() -> HarnessResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(s) = std::env::var(THREADS_ENV) {
        let n: usize = s.trim().parse().map_err(|_| HarnessError::Usage(format!("{THREADS_ENV}={s:?} is not a count")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| HarnessError::Internal(e.to_string()))
}

pub fn execute<E: Experiment>(e: &E, indices: &[u64]) -> HarnessResult<Outcome> {
    let trials = pool()?.install(|| {
        indices.par_iter().map(|&i| e.run_trial(i).map(|t| (i, t))).collect::<HarnessResult<Vec<_>>>()
    })?;
    let out = e.summarize(trials);
    if !out.passed && out.counterexamples.is_empty() {
        return Err(HarnessError::Internal("failing outcome without a counterexample".into()));
    }
    Ok(out)
}

/// Runs the selected trials (all of them when `indices` is `None`).
pub fn run_indices(cfg: &ExperimentConfig, indices: Option<&[u64]>) -> HarnessResult<Outcome> {
    fn go<E: Experiment>(e: E, indices: Option<&[u64]>) -> HarnessResult<Outcome> {
        match indices {
            Some(ix) => {
                if let Some(&bad) = ix.iter().find(|&&i| i >= e.trial_count()) {
                    return Err(HarnessError::Usage(format!("trial {bad} is out of range")));
                }
                execute(&e, ix)
            }
            None => execute(&e, &(0..e.trial_count()).collect::<Vec<_>>()),
        }
    }
    cfg.validate()?;
    match cfg.experiment {
        ExperimentId::VerifyPaper => go(experiments::verify_paper::VerifyPaper::new(cfg)?, indices),
        ExperimentId::RankLaws => go(experiments::rank_laws::RankLaws::new(cfg)?, indices),
        ExperimentId::GenericRank => go(experiments::generic_rank::GenericRank::new(cfg)?, indices),
        ExperimentId::UpsilonIdentities => go(experiments::identities::Identities::new(cfg)?, indices),
        ExperimentId::Char3Witness => go(experiments::char3::Char3::new(cfg)?, indices),
        ExperimentId::LemmaM => go(experiments::lemma_m::LemmaM::new(cfg)?, indices),
        ExperimentId::HilbertRoundtrip => go(experiments::hilbert::Hilbert::new(cfg)?, indices),
        ExperimentId::TangentDim => go(experiments::tangent::Tangent::new(cfg)?, indices),
        ExperimentId::Coarsen => go(experiments::coarsen::Coarsen::new(cfg)?, indices),
    }
}

/// Runs every trial of the configured experiment.
pub fn run(cfg: &ExperimentConfig) -> HarnessResult<Report> {
    run_timed(cfg, false)
}

pub fn run_timed(cfg: &ExperimentConfig, timing: bool) -> HarnessResult<Report> {
    let start = Instant::now();
    let out = run_indices(cfg, None)?;
    Ok(Report {
        experiment: cfg.experiment,
        config: cfg.clone(),
        passed: out.passed,
        statistics: out.statistics,
        counterexamples: out.counterexamples,
        wall_clock_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}
