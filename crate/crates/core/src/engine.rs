//! Runs a strategy against a hidden tree and accounts every move.
//!
//! The strategy only ever sees its initial [`Knowledge`] and one
//! [`Observation`] per step. Node ids stay on the engine side and appear only
//! in the resulting [`Trace`].

use serde::Serialize;
use thiserror::Error;

use crate::knowledge::Knowledge;
use crate::tree::{blind_code, NodeId, Port, PortTree};

/// What the agent perceives at its current node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Observation {
    pub degree: usize,
    /// Port through which the agent entered; absent at time 0.
    pub entry_port: Option<Port>,
    pub at_root: bool,
}

impl Observation {
    /// Compact encoding used when comparing observation histories.
    pub fn packed(&self) -> u64 {
        let entry = self.entry_port.map_or(0, |p| p as u64 + 1);
        ((self.degree as u64) << 33) | (entry << 1) | u64::from(self.at_root)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Decision {
    Move(Port),
    Halt,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("strategy {strategy} cannot run here: {reason}")]
    Unsupported { strategy: String, reason: String },
}

/// A resumable, deterministic decision procedure.
pub trait Strategy: Send {
    fn id(&self) -> String;

    /// Receives the initial knowledge. Called once, before any observation.
    fn begin(&mut self, knowledge: &Knowledge) -> Result<(), StrategyError>;

    fn decide(&mut self, obs: &Observation) -> Decision;

    /// Completed sweeps `(level, moves)`, for strategies built from DFS sweeps.
    fn sweep_log(&self) -> Option<&[SweepRecord]> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub level: usize,
    pub moves: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Move {
    pub time: u64,
    pub from: NodeId,
    pub port: Port,
    pub to: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub moves: Vec<Move>,
    /// Earliest time each node was occupied; the root at time 0.
    pub first_visit: Vec<Option<u64>>,
    pub total_moves: u64,
    /// Observation handed to the strategy before each decision.
    pub observations: Vec<Observation>,
    pub decisions: Vec<Decision>,
    /// True when the strategy halted on its own.
    pub halted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Run until the strategy halts.
    Halt,
    /// Stop as soon as every node at this level has been visited.
    LevelCovered(usize),
    /// Stop as soon as every node at levels `1..=d` has been visited.
    LevelsCovered(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Move budget; `None` means [`default_fuel`].
    pub fuel: Option<u64>,
    pub stop: StopRule,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            fuel: None,
            stop: StopRule::Halt,
        }
    }
}

impl RunOptions {
    pub fn stop(stop: StopRule) -> Self {
        Self { fuel: None, stop }
    }
}

/// `8·n²` moves: above every implemented strategy's worst case.
pub fn default_fuel(nodes: usize) -> u64 {
    8 * (nodes as u64).pow(2)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("setup: {0}")]
    Setup(String),
    #[error("protocol violation at step {step}: port {port} at a node of degree {degree}")]
    Protocol { step: u64, port: Port, degree: usize },
    #[error("fuel of {fuel} moves exhausted")]
    FuelExhausted { fuel: u64, trace: Box<Trace> },
    #[error("level {level} not covered: {missing} node(s) never visited")]
    Coverage { level: usize, missing: usize },
    #[error("level {d} outside [1, {depth}]")]
    LevelRange { d: usize, depth: usize },
}

impl From<StrategyError> for EngineError {
    fn from(e: StrategyError) -> Self {
        EngineError::Setup(e.to_string())
    }
}

pub(crate) fn check_consistent(knowledge: &Knowledge, env: &PortTree) -> Result<(), EngineError> {
    match knowledge.complete_map() {
        Some(map) if map != env => Err(EngineError::Setup("complete map differs from the environment".into())),
        Some(_) => Ok(()),
        None if blind_code(env).code != knowledge.blind_map().code => Err(EngineError::Setup(
            "blind map does not match the environment's shape".into(),
        )),
        None => Ok(()),
    }
}

pub fn run(
    strategy: &mut dyn Strategy,
    knowledge: &Knowledge,
    env: &PortTree,
    opts: &RunOptions,
) -> Result<Trace, EngineError> {
    check_consistent(knowledge, env)?;
    run_consistent(strategy, knowledge, env, opts)
}

/// [`run`] for callers that already checked `knowledge` against `env`.
pub(crate) fn run_consistent(
    strategy: &mut dyn Strategy,
    knowledge: &Knowledge,
    env: &PortTree,
    opts: &RunOptions,
) -> Result<Trace, EngineError> {
    strategy.begin(knowledge)?;
    let fuel = opts.fuel.unwrap_or_else(|| default_fuel(env.len()));

    let in_target = |v: NodeId| match opts.stop {
        StopRule::Halt => false,
        StopRule::LevelCovered(d) => env.level(v) == d,
        StopRule::LevelsCovered(d) => (1..=d).contains(&env.level(v)),
    };
    let mut pending = match opts.stop {
        StopRule::Halt => usize::MAX,
        _ => (0..env.len()).filter(|&v| in_target(v)).count(),
    };

    let root = env.root();
    let mut trace = Trace {
        moves: Vec::new(),
        first_visit: vec![None; env.len()],
        total_moves: 0,
        observations: Vec::new(),
        decisions: Vec::new(),
        halted: false,
    };
    trace.first_visit[root] = Some(0);
    if in_target(root) {
        pending -= 1;
    }
    let mut pos = root;
    let mut entry = None;

    while pending > 0 {
        let obs = Observation {
            degree: env.degree(pos),
            entry_port: entry,
            at_root: pos == root,
        };
        let decision = strategy.decide(&obs);
        trace.observations.push(obs);
        trace.decisions.push(decision);
        let port = match decision {
            Decision::Halt => {
                trace.halted = true;
                break;
            }
            Decision::Move(p) => p,
        };
        let step = trace.total_moves + 1;
        let Some((to, back)) = env.traverse(pos, port) else {
            return Err(EngineError::Protocol {
                step,
                port,
                degree: obs.degree,
            });
        };
        if trace.total_moves == fuel {
            return Err(EngineError::FuelExhausted {
                fuel,
                trace: Box::new(trace),
            });
        }
        trace.total_moves = step;
        trace.moves.push(Move {
            time: step,
            from: pos,
            port,
            to,
        });
        if trace.first_visit[to].is_none() {
            trace.first_visit[to] = Some(step);
            if in_target(to) {
                pending -= 1;
            }
        }
        pos = to;
        entry = Some(back);
    }
    Ok(trace)
}

/// `C(T, d)`: the time at which the last level-`d` node is first visited.
pub fn cost_until_level(trace: &Trace, env: &PortTree, d: usize) -> Result<u64, EngineError> {
    if d < 1 || d > env.depth() {
        return Err(EngineError::LevelRange { d, depth: env.depth() });
    }
    let mut worst = 0;
    let mut missing = 0;
    for v in env.nodes_at_level(d) {
        match trace.first_visit[v] {
            Some(t) => worst = worst.max(t),
            None => missing += 1,
        }
    }
    if missing > 0 {
        return Err(EngineError::Coverage { level: d, missing });
    }
    Ok(worst)
}

/// Costs for every level `1..=max_level` from one trace.
pub fn level_costs(trace: &Trace, env: &PortTree, max_level: usize) -> Result<Vec<u64>, EngineError> {
    (1..=max_level.min(env.depth()))
        .map(|d| cost_until_level(trace, env, d))
        .collect()
}
