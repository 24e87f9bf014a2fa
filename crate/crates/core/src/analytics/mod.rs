//! Metrics over runs: worst-case cost, overhead, analytic lower bounds,
//! schedule checks and penalty witnesses.

mod adversary;
mod bounds;
mod corpus;
mod overhead;
mod schedule_check;
mod witness;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::EngineError;
use crate::generators::GenError;
use crate::knowledge::KnowledgeError;
use crate::oracle::OracleError;
use crate::tree::TreeError;

pub use adversary::{arrange, heavy_first, spine_adversaries, star_pendant_representatives};
pub use bounds::{linear_ceiling, lower_bound_known_distance, lower_bound_no_distance};
pub use corpus::{default_corpus, even_corpus, random_corpus, CorpusEntry, EVEN_TARGET_CAP};
pub use overhead::{overhead, overhead_curve, overhead_over, Argmax, OverheadPolicy, OverheadQuery, OverheadReport};
pub use schedule_check::{check_lemma2, Check, ScheduleBoundReport};
pub use witness::{
    penalty_witness_caterpillar, penalty_witness_doubling, penalty_witness_star, DoublingWitness, PenaltyWitness,
    WitnessSide,
};

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_160_503;

/// How much of the instance family a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Sampled { count: usize, seed: u64 },
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => f.write_str("exact"),
            Exactness::Sampled { count, seed } => write!(f, "sampled(count={count};seed={seed})"),
        }
    }
}

/// The run an error came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub relabeling: u64,
    pub d: Option<usize>,
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relabeling {}", self.relabeling)?;
        if let Some(d) = self.d {
            write!(f, ", d = {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error("{instance}: {source}")]
    Engine {
        instance: Instance,
        #[source]
        source: EngineError,
    },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Knowledge(#[from] KnowledgeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Parameter(String),
}
