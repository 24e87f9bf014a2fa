//! The four knowledge types an agent can start with.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{blind_code, BlindMap, PortTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnowledgeKind {
    CompleteDist,
    BlindDist,
    CompleteNoDist,
    BlindNoDist,
}

impl KnowledgeKind {
    pub const ALL: [KnowledgeKind; 4] = [
        KnowledgeKind::CompleteDist,
        KnowledgeKind::BlindDist,
        KnowledgeKind::CompleteNoDist,
        KnowledgeKind::BlindNoDist,
    ];

    pub fn has_distance(self) -> bool {
        matches!(self, KnowledgeKind::CompleteDist | KnowledgeKind::BlindDist)
    }

    pub fn is_complete(self) -> bool {
        matches!(self, KnowledgeKind::CompleteDist | KnowledgeKind::CompleteNoDist)
    }

    /// The precision order: `self ≪ other` when every knowledge of type
    /// `self` is contained in some knowledge of type `other`.
    pub fn at_least_as_precise_as(self, other: KnowledgeKind) -> bool {
        (self.is_complete() || !other.is_complete()) && (self.has_distance() || !other.has_distance())
    }

    pub fn name(self) -> &'static str {
        match self {
            KnowledgeKind::CompleteDist => "complete_dist",
            KnowledgeKind::BlindDist => "blind_dist",
            KnowledgeKind::CompleteNoDist => "complete_nodist",
            KnowledgeKind::BlindNoDist => "blind_nodist",
        }
    }
}

impl fmt::Display for KnowledgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnowledgeKind {
    type Err = KnowledgeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KnowledgeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| KnowledgeError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnowledgeError {
    #[error("distance {d} outside [1, {depth}]")]
    Distance { d: usize, depth: usize },
    #[error("knowledge kind {0} requires a distance")]
    MissingDistance(KnowledgeKind),
    #[error("knowledge kind {0} carries no distance")]
    UnexpectedDistance(KnowledgeKind),
    #[error("unknown knowledge kind `{0}` (expected one of complete_dist, blind_dist, complete_nodist, blind_nodist)")]
    UnknownKind(String),
}

#[derive(Debug, Clone)]
pub enum MapKnowledge {
    Complete(PortTree),
    Blind,
}

/// Initial knowledge handed to a strategy. Complete maps also carry their
/// blind map, so port-oblivious strategies can use either.
#[derive(Debug, Clone)]
pub struct Knowledge {
    map: MapKnowledge,
    blind: BlindMap,
    distance: Option<usize>,
}

impl Knowledge {
    /// Knowledge of the given kind about `tree` with the treasure at level `d`.
    pub fn new(kind: KnowledgeKind, tree: &PortTree, d: Option<usize>) -> Result<Self, KnowledgeError> {
        let blind = blind_code(tree);
        let map = if kind.is_complete() {
            MapKnowledge::Complete(tree.clone())
        } else {
            MapKnowledge::Blind
        };
        Self::assemble(kind, map, blind, d)
    }

    /// Blind knowledge from an already computed blind map.
    pub fn blind(blind: BlindMap, d: Option<usize>) -> Result<Self, KnowledgeError> {
        let kind = if d.is_some() {
            KnowledgeKind::BlindDist
        } else {
            KnowledgeKind::BlindNoDist
        };
        Self::assemble(kind, MapKnowledge::Blind, blind, d)
    }

    fn assemble(
        kind: KnowledgeKind,
        map: MapKnowledge,
        blind: BlindMap,
        d: Option<usize>,
    ) -> Result<Self, KnowledgeError> {
        match (kind.has_distance(), d) {
            (true, None) => return Err(KnowledgeError::MissingDistance(kind)),
            (false, Some(_)) => return Err(KnowledgeError::UnexpectedDistance(kind)),
            (true, Some(d)) if d < 1 || d > blind.depth() => {
                return Err(KnowledgeError::Distance {
                    d,
                    depth: blind.depth(),
                })
            }
            _ => {}
        }
        Ok(Self {
            map,
            blind,
            distance: d,
        })
    }

    /// Replaces the distance, keeping the map.
    pub fn with_distance(&self, d: Option<usize>) -> Result<Self, KnowledgeError> {
        let kind = match (&self.map, d.is_some()) {
            (MapKnowledge::Complete(_), true) => KnowledgeKind::CompleteDist,
            (MapKnowledge::Complete(_), false) => KnowledgeKind::CompleteNoDist,
            (MapKnowledge::Blind, true) => KnowledgeKind::BlindDist,
            (MapKnowledge::Blind, false) => KnowledgeKind::BlindNoDist,
        };
        Self::assemble(kind, self.map.clone(), self.blind.clone(), d)
    }

    pub fn kind(&self) -> KnowledgeKind {
        match (&self.map, self.distance.is_some()) {
            (MapKnowledge::Complete(_), true) => KnowledgeKind::CompleteDist,
            (MapKnowledge::Complete(_), false) => KnowledgeKind::CompleteNoDist,
            (MapKnowledge::Blind, true) => KnowledgeKind::BlindDist,
            (MapKnowledge::Blind, false) => KnowledgeKind::BlindNoDist,
        }
    }

    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    pub fn blind_map(&self) -> &BlindMap {
        &self.blind
    }

    pub fn complete_map(&self) -> Option<&PortTree> {
        match &self.map {
            MapKnowledge::Complete(t) => Some(t),
            MapKnowledge::Blind => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.blind.depth()
    }
}
