//! Search strategies.
//!
//! Strategy names accepted by [`StrategySpec::from_str`]: `dfs:<h>`, `dfs`
//! (sweep to the known distance), `algo1`, `doubling`, `incremental`,
//! `spine`, `optimal`.

mod optimal;
mod schedule;
mod spine;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::Strategy;

pub use optimal::{optimal_known, OptimalKnown, PlannedWalk};
pub use schedule::{blind_schedule, ScheduleStep, ScheduleTrace};
pub use spine::{is_caterpillar, SpineWalk};
pub use sweep::{LevelPlan, SweepSequence};

pub const STRATEGY_NAMES: &str = "dfs:<h>, dfs, algo1, doubling, incremental, spine, optimal";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown strategy `{0}` (expected one of {STRATEGY_NAMES})")]
pub struct UnknownStrategy(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StrategySpec {
    /// One DFS sweep; `None` sweeps to the known distance.
    Dfs(Option<usize>),
    Algo1,
    Doubling,
    Incremental,
    Spine,
    Optimal,
}

impl StrategySpec {
    pub fn build(&self) -> Box<dyn Strategy> {
        match *self {
            StrategySpec::Dfs(h) => Box::new(SweepSequence::new(LevelPlan::Single(h))),
            StrategySpec::Algo1 => Box::new(SweepSequence::new(LevelPlan::BlindSchedule)),
            StrategySpec::Doubling => Box::new(SweepSequence::new(LevelPlan::Doubling)),
            StrategySpec::Incremental => Box::new(SweepSequence::new(LevelPlan::Incremental)),
            StrategySpec::Spine => Box::new(SpineWalk::new()),
            StrategySpec::Optimal => Box::new(OptimalKnown::new()),
        }
    }

    /// Strategies whose moves never depend on ports read from the map.
    pub fn is_port_oblivious(&self) -> bool {
        !matches!(self, StrategySpec::Optimal)
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategySpec::Dfs(Some(h)) => write!(f, "dfs:{h}"),
            StrategySpec::Dfs(None) => f.write_str("dfs"),
            StrategySpec::Algo1 => f.write_str("algo1"),
            StrategySpec::Doubling => f.write_str("doubling"),
            StrategySpec::Incremental => f.write_str("incremental"),
            StrategySpec::Spine => f.write_str("spine"),
            StrategySpec::Optimal => f.write_str("optimal"),
        }
    }
}

impl FromStr for StrategySpec {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "dfs" => StrategySpec::Dfs(None),
            "algo1" => StrategySpec::Algo1,
            "doubling" => StrategySpec::Doubling,
            "incremental" => StrategySpec::Incremental,
            "spine" => StrategySpec::Spine,
            "optimal" => StrategySpec::Optimal,
            _ => {
                let h = s
                    .strip_prefix("dfs:")
                    .and_then(|h| h.parse::<usize>().ok())
                    .filter(|&h| h >= 1)
                    .ok_or_else(|| UnknownStrategy(s.to_string()))?;
                StrategySpec::Dfs(Some(h))
            }
        })
    }
}

impl TryFrom<String> for StrategySpec {
    type Error = UnknownStrategy;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<StrategySpec> for String {
    fn from(s: StrategySpec) -> Self {
        s.to_string()
    }
}
