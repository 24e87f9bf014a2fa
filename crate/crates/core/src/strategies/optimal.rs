//! Shortest walk covering a whole level when the complete map and the
//! distance are known.

use serde::Serialize;

use crate::engine::{Decision, EngineError, Observation, Strategy, StrategyError};
use crate::knowledge::Knowledge;
use crate::tree::{NodeId, Port, PortTree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlannedWalk {
    pub ports: Vec<Port>,
    /// Node sequence, starting at the root.
    pub nodes: Vec<NodeId>,
    /// Time of the first visit of the last level-`d` node.
    pub cost: u64,
}

/// DFS of the union of root-to-level-`d` paths, cut at the last target.
/// Its length is `2·|E| − d` where `E` is the edge set of that union.
pub fn optimal_known(tree: &PortTree, d: usize) -> Result<PlannedWalk, EngineError> {
    if d < 1 || d > tree.depth() {
        return Err(EngineError::LevelRange { d, depth: tree.depth() });
    }
    let mut useful = vec![false; tree.len()];
    let mut targets = 0;
    for t in tree.nodes_at_level(d) {
        targets += 1;
        let mut v = t;
        while !useful[v] {
            useful[v] = true;
            match tree.parent(v) {
                Some(p) => v = p,
                None => break,
            }
        }
    }

    let mut ports = Vec::new();
    let mut nodes = vec![tree.root()];
    let mut seen = 0;
    // (node, index of the next child to try)
    let mut stack = vec![(tree.root(), 0usize)];
    'walk: while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let kids = tree.children(v);
        while *next < kids.len() {
            let (p, c) = kids[*next];
            *next += 1;
            if useful[c] {
                ports.push(p);
                nodes.push(c);
                if tree.level(c) == d {
                    seen += 1;
                    if seen == targets {
                        break 'walk;
                    }
                    ports.push(tree.node(c).parent_port.unwrap());
                    nodes.push(v);
                } else {
                    stack.push((c, 0));
                }
                continue 'walk;
            }
        }
        stack.pop();
        if let Some(&(p, _)) = stack.last() {
            ports.push(tree.node(v).parent_port.unwrap());
            nodes.push(p);
        }
    }
    Ok(PlannedWalk {
        cost: ports.len() as u64,
        ports,
        nodes,
    })
}

/// Replays [`optimal_known`]'s walk. Needs a complete map and the distance.
#[derive(Default)]
pub struct OptimalKnown {
    ports: Vec<Port>,
    next: usize,
}

impl OptimalKnown {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for OptimalKnown {
    fn id(&self) -> String {
        "optimal".into()
    }

    fn begin(&mut self, knowledge: &Knowledge) -> Result<(), StrategyError> {
        let refuse = |reason: &str| StrategyError::Unsupported {
            strategy: "optimal".into(),
            reason: reason.into(),
        };
        let map = knowledge.complete_map().ok_or_else(|| refuse("needs a complete map"))?;
        let d = knowledge
            .distance()
            .ok_or_else(|| refuse("needs the distance to the treasure"))?;
        self.ports = optimal_known(map, d).map_err(|e| refuse(&e.to_string()))?.ports;
        self.next = 0;
        Ok(())
    }

    fn decide(&mut self, _obs: &Observation) -> Decision {
        let d = self.ports.get(self.next).map_or(Decision::Halt, |&p| Decision::Move(p));
        self.next += 1;
        d
    }
}
