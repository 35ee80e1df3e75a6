use std::fmt;
use std::str::FromStr;

use nilcommute_core::algebra::is_prime;
use nilcommute_core::commutant::Partition;
use nilcommute_core::rank_laws::Law;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, HarnessResult};

pub const DEFAULT_PRIME: u64 = 101;
pub const DEFAULT_TRIALS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    VerifyPaper,
    RankLaws,
    GenericRank,
    UpsilonIdentities,
    Char3Witness,
    LemmaM,
    HilbertRoundtrip,
    TangentDim,
    Coarsen,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 9] = [
        ExperimentId::VerifyPaper,
        ExperimentId::RankLaws,
        ExperimentId::GenericRank,
        ExperimentId::UpsilonIdentities,
        ExperimentId::Char3Witness,
        ExperimentId::LemmaM,
        ExperimentId::HilbertRoundtrip,
        ExperimentId::TangentDim,
        ExperimentId::Coarsen,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExperimentId::VerifyPaper => "verify-paper",
            ExperimentId::RankLaws => "rank-laws",
            ExperimentId::GenericRank => "generic-rank",
            ExperimentId::UpsilonIdentities => "upsilon-identities",
            ExperimentId::Char3Witness => "char3-witness",
            ExperimentId::LemmaM => "lemma-m",
            ExperimentId::HilbertRoundtrip => "hilbert-roundtrip",
            ExperimentId::TangentDim => "tangent-dim",
            ExperimentId::Coarsen => "coarsen",
        }
    }

    /// Largest `n` used when the config gives neither `n` nor a partition.
    pub fn default_n(self) -> usize {
        match self {
            ExperimentId::RankLaws | ExperimentId::GenericRank => 8,
            ExperimentId::UpsilonIdentities => 9,
            ExperimentId::LemmaM => 7,
            ExperimentId::HilbertRoundtrip | ExperimentId::Coarsen => 6,
            ExperimentId::TangentDim => 5,
            ExperimentId::VerifyPaper | ExperimentId::Char3Witness => 7,
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ExperimentId {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        if s == "hilbert" {
            return Ok(ExperimentId::HilbertRoundtrip);
        }
        ExperimentId::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| HarnessError::Usage(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> HarnessResult<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(HarnessError::Usage(format!("unknown format {s:?}"))),
        }
    }
}

/// Everything a run depends on. Reports echo it, so a report can be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    /// Exact size for single-size experiments, otherwise the largest size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Restricts partition-driven experiments to one Jordan type.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// `all` or one law id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<String>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentId) -> Self {
        ExperimentConfig {
            experiment,
            n: None,
            partition: None,
            m: None,
            l: None,
            law: None,
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            seed: 0,
            format: Format::Json,
            inject_fault: None,
        }
    }

    pub fn validate(&self) -> HarnessResult<()> {
        let usage = |m: String| Err(HarnessError::Usage(m));
        if self.trials == 0 {
            return usage("trials must be at least 1".into());
        }
        if !is_prime(self.prime) {
            return usage(format!("{} is not prime", self.prime));
        }
        if self.prime >= 1 << 32 {
            return usage(format!("prime {} must be below 2^32", self.prime));
        }
        if let Some(p) = self.partition()? {
            if let Some(n) = self.n {
                if p.n() != n {
                    return usage(format!("partition {p} does not sum to n = {n}"));
                }
            }
        }
        if let Some(n) = self.n {
            if n == 0 {
                return usage("n must be positive".into());
            }
        }
        self.laws()?;
        if let Some(f) = &self.inject_fault {
            if Law::parse(f).is_none() {
                return usage(format!("unknown law {f:?} for fault injection"));
            }
        }
        Ok(())
    }

    pub fn partition(&self) -> HarnessResult<Option<Partition>> {
        self.partition
            .as_deref()
            .map(|s| Partition::parse(s).map_err(|e| HarnessError::Usage(format!("partition {s:?}: {e}"))))
            .transpose()
    }

    /// The laws selected by `law` (all of them when unset).
    pub fn laws(&self) -> HarnessResult<Vec<Law>> {
        match self.law.as_deref() {
            None | Some("all") => Ok(Law::ALL.to_vec()),
            Some(s) => Law::parse(s).map(|l| vec![l]).ok_or_else(|| HarnessError::Usage(format!("unknown law {s:?}"))),
        }
    }

    pub fn n_or_default(&self) -> usize {
        self.n.unwrap_or_else(|| self.experiment.default_n())
    }

    /// The explicit partition, or every partition of `1..=n`.
    pub fn partitions(&self) -> HarnessResult<Vec<Partition>> {
        Ok(match self.partition()? {
            Some(p) => vec![p],
            None => (1..=self.n_or_default()).flat_map(Partition::all).collect(),
        })
    }

    pub fn injected(&self) -> Option<Law> {
        self.inject_fault.as_deref().and_then(Law::parse)
    }
}
