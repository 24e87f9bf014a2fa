//! Deterministic treasure hunt on port-numbered rooted trees.
//!
//! An agent starts at the root of a tree whose ports it can read only
//! locally, and must visit every node of the treasure's level. [`engine`]
//! runs [`strategies`] against a hidden [`tree::PortTree`] under one of four
//! [`knowledge`] kinds; [`analytics`] turns runs into worst-case costs and
//! overheads, and [`oracle`] certifies small cases by brute force.

pub mod analytics;
pub mod engine;
pub mod generators;
pub mod knowledge;
pub mod oracle;
pub mod strategies;
pub mod tree;

pub use analytics::{Exactness, OverheadReport};
pub use engine::{run, Decision, Observation, RunOptions, StopRule, Strategy, Trace};
pub use generators::{generate, Family, GenSpec};
pub use knowledge::{Knowledge, KnowledgeKind};
pub use strategies::{ScheduleTrace, StrategySpec};
pub use tree::{BlindMap, LevelProfile, NodeId, Port, PortMode, PortTree};
