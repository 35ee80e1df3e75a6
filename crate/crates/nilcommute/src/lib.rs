//! Reproducible experiments over the `nilcommute-core` verifiers: seeded
//! configuration, trial-parallel execution, JSON/CSV reports and replay of
//! recorded counterexamples.

pub mod config;
pub mod error;
pub mod experiments;
pub mod formats;
pub mod golden;
pub mod replay;
pub mod report;
pub mod runner;

pub use config::{ExperimentConfig, ExperimentId, Format};
pub use error::{HarnessError, HarnessResult};
pub use replay::replay;
pub use report::{Counterexample, Report};
pub use runner::run;
