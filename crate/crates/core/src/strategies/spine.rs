//! Distance-aware walk specialised to caterpillars.
//!
//! On a caterpillar the spine child of `u_i` has degree 3 while the pendant
//! `v_{i+1}` has degree at least 4, so one probe (and at most one step back)
//! identifies the spine. The walk climbs down to `u_{d-2}` and sweeps two
//! levels below it.

use crate::engine::{Decision, Observation, Strategy, StrategyError};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::generators::{caterpillar_nodes, shape, Family};
use crate::knowledge::Knowledge;
use crate::tree::{blind_code, Port, PortMode, PortTree};

use super::sweep::Sweep;

enum Phase {
    AtSpine,
    Probing { first: Port },
    Returning { first: Port },
    Entering,
    Sweeping(Sweep),
}

pub struct SpineWalk {
    remaining: usize,
    parent: Option<Port>,
    phase: Phase,
}

impl Default for SpineWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl SpineWalk {
    pub fn new() -> Self {
        Self {
            remaining: 0,
            parent: None,
            phase: Phase::AtSpine,
        }
    }

    fn refuse(reason: &str) -> StrategyError {
        StrategyError::Unsupported {
            strategy: "spine".into(),
            reason: reason.into(),
        }
    }
}

fn lowest_child_port(degree: usize, parent: Option<Port>, except: Option<Port>) -> Port {
    (0..degree)
        .find(|&p| Some(p) != parent && Some(p) != except)
        .expect("spine nodes have two children")
}

/// True when the blind map is the caterpillar of its own depth.
pub fn is_caterpillar(knowledge: &Knowledge) -> bool {
    let l = knowledge.depth();
    if l < 2 {
        return false;
    }
    if knowledge.blind_map().profile.total_nodes() != caterpillar_nodes(l) {
        return false;
    }
    static CODES: OnceLock<Mutex<HashMap<usize, Arc<str>>>> = OnceLock::new();
    let reference = CODES
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(l)
        .or_insert_with(|| {
            let parents = shape(&Family::Caterpillar { l }).expect("l >= 2");
            let tree = PortTree::from_parents(&parents, PortMode::Sorted).expect("caterpillar is a tree");
            blind_code(&tree).code.into()
        })
        .clone();
    *reference == *knowledge.blind_map().code
}

impl Strategy for SpineWalk {
    fn id(&self) -> String {
        "spine".into()
    }

    fn begin(&mut self, knowledge: &Knowledge) -> Result<(), StrategyError> {
        let d = knowledge
            .distance()
            .ok_or_else(|| Self::refuse("needs the distance to the treasure"))?;
        if !is_caterpillar(knowledge) {
            return Err(Self::refuse("map is not a caterpillar"));
        }
        self.parent = None;
        if d == 1 {
            self.remaining = 0;
            self.phase = Phase::Sweeping(Sweep::new(1, None));
        } else {
            self.remaining = d - 2;
            self.phase = Phase::AtSpine;
        }
        Ok(())
    }

    fn decide(&mut self, obs: &Observation) -> Decision {
        loop {
            match &mut self.phase {
                Phase::AtSpine => {
                    if self.remaining == 0 {
                        self.phase = Phase::Sweeping(Sweep::new(2, self.parent));
                        continue;
                    }
                    let first = lowest_child_port(obs.degree, self.parent, None);
                    self.phase = Phase::Probing { first };
                    return Decision::Move(first);
                }
                Phase::Probing { first } => {
                    if obs.degree <= 3 {
                        self.phase = Phase::Entering;
                        continue;
                    }
                    let first = *first;
                    self.phase = Phase::Returning { first };
                    return Decision::Move(obs.entry_port.expect("probe arrived through a port"));
                }
                Phase::Returning { first } => {
                    let other = lowest_child_port(obs.degree, self.parent, Some(*first));
                    self.phase = Phase::Entering;
                    return Decision::Move(other);
                }
                Phase::Entering => {
                    self.parent = obs.entry_port;
                    self.remaining -= 1;
                    self.phase = Phase::AtSpine;
                }
                Phase::Sweeping(sweep) => {
                    return sweep.step(obs).map_or(Decision::Halt, Decision::Move);
                }
            }
        }
    }
}
