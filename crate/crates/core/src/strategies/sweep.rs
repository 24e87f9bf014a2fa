use crate::engine::{Decision, Observation, Strategy, StrategyError, SweepRecord};
use crate::knowledge::Knowledge;
use crate::tree::Port;

use super::schedule::blind_schedule;

struct Frame {
    parent: Option<Port>,
    degree: usize,
    next: Port,
}

/// Depth-first sweep down to `limit` levels below its starting node,
/// children in increasing port order, ending back at the start.
pub(crate) struct Sweep {
    limit: usize,
    base_parent: Option<Port>,
    frames: Vec<Frame>,
    descending: bool,
    moves: u64,
}

impl Sweep {
    /// `base_parent` is the port at the start node that must not be entered.
    pub(crate) fn new(limit: usize, base_parent: Option<Port>) -> Self {
        Self {
            limit,
            base_parent,
            frames: Vec::new(),
            descending: false,
            moves: 0,
        }
    }

    pub(crate) fn moves(&self) -> u64 {
        self.moves
    }

    /// Next port to take, or `None` once the sweep is back at its start.
    pub(crate) fn step(&mut self, obs: &Observation) -> Option<Port> {
        if self.frames.is_empty() {
            self.frames.push(Frame {
                parent: self.base_parent,
                degree: obs.degree,
                next: 0,
            });
        } else if self.descending {
            self.frames.push(Frame {
                parent: obs.entry_port,
                degree: obs.degree,
                next: 0,
            });
        }
        self.descending = false;

        let relative = self.frames.len() - 1;
        let top = self.frames.last_mut().unwrap();
        if relative < self.limit {
            while top.next < top.degree && Some(top.next) == top.parent {
                top.next += 1;
            }
            if top.next < top.degree {
                let p = top.next;
                top.next += 1;
                self.descending = true;
                self.moves += 1;
                return Some(p);
            }
        }
        if self.frames.len() == 1 {
            return None;
        }
        let frame = self.frames.pop().unwrap();
        self.moves += 1;
        frame.parent
    }
}

/// Which sweep levels a [`SweepSequence`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelPlan {
    /// A single sweep; `None` takes the level from the known distance.
    Single(Option<usize>),
    /// The blind-map level schedule.
    BlindSchedule,
    /// Levels 2, 4, 8, ...
    Doubling,
    /// Levels 1, 2, 3, ...
    Incremental,
}

/// A sequence of full DFS sweeps from the root. The plan is fixed at
/// [`Strategy::begin`] from the map's level profile; ports are never read
/// from the map.
pub struct SweepSequence {
    plan: LevelPlan,
    levels: Vec<usize>,
    next_level: usize,
    current: Option<(usize, Sweep)>,
    log: Vec<SweepRecord>,
}

impl SweepSequence {
    pub fn new(plan: LevelPlan) -> Self {
        Self {
            plan,
            levels: Vec::new(),
            next_level: 0,
            current: None,
            log: Vec::new(),
        }
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }
}

/// Levels `2, 4, 8, ...` up to and including the first one reaching `depth`.
fn doubling_levels(depth: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    let mut h = 2usize;
    loop {
        out.push(h);
        if h >= depth {
            return out;
        }
        h *= 2;
    }
}

impl Strategy for SweepSequence {
    fn id(&self) -> String {
        match self.plan {
            LevelPlan::Single(Some(h)) => format!("dfs:{h}"),
            LevelPlan::Single(None) => "dfs".into(),
            LevelPlan::BlindSchedule => "algo1".into(),
            LevelPlan::Doubling => "doubling".into(),
            LevelPlan::Incremental => "incremental".into(),
        }
    }

    fn begin(&mut self, knowledge: &Knowledge) -> Result<(), StrategyError> {
        let depth = knowledge.depth();
        self.levels = match self.plan {
            LevelPlan::Single(Some(h)) => {
                if h == 0 {
                    return Err(StrategyError::Unsupported {
                        strategy: self.id(),
                        reason: "sweep level must be at least 1".into(),
                    });
                }
                vec![h]
            }
            LevelPlan::Single(None) => match knowledge.distance() {
                Some(d) => vec![d],
                None => {
                    return Err(StrategyError::Unsupported {
                        strategy: self.id(),
                        reason: "needs the distance to the treasure".into(),
                    })
                }
            },
            LevelPlan::BlindSchedule => blind_schedule(&knowledge.blind_map().profile)
                .steps
                .iter()
                .map(|s| s.level)
                .collect(),
            LevelPlan::Doubling => doubling_levels(depth),
            LevelPlan::Incremental => (1..=depth).collect(),
        };
        self.next_level = 0;
        self.current = None;
        self.log.clear();
        Ok(())
    }

    fn decide(&mut self, obs: &Observation) -> Decision {
        loop {
            if self.current.is_none() {
                let Some(&level) = self.levels.get(self.next_level) else {
                    return Decision::Halt;
                };
                self.next_level += 1;
                self.current = Some((level, Sweep::new(level, None)));
            }
            let (level, sweep) = self.current.as_mut().unwrap();
            match sweep.step(obs) {
                Some(p) => return Decision::Move(p),
                None => {
                    self.log.push(SweepRecord {
                        level: *level,
                        moves: sweep.moves(),
                    });
                    self.current = None;
                }
            }
        }
    }

    fn sweep_log(&self) -> Option<&[SweepRecord]> {
        Some(&self.log)
    }
}
