use std::collections::VecDeque;

use serde::Serialize;

use super::OracleError;
use crate::tree::{NodeId, Port, PortTree};

/// Largest target set the search accepts; the state space is `n·2^k`.
pub const MAX_TARGETS: usize = 16;

/// One search state: where the walker is and which targets it has seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverState {
    pub position: NodeId,
    pub covered: u32,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWalk {
    pub cost: u64,
    pub nodes: Vec<NodeId>,
    pub ports: Vec<Port>,
}

/// Minimum number of moves from the root until every target has been
/// visited, by uniform-cost search over `(position, covered)` states.
pub fn min_cover_walk(tree: &PortTree, targets: &[NodeId]) -> Result<CoverWalk, OracleError> {
    if targets.len() > MAX_TARGETS {
        return Err(OracleError::TooManyTargets {
            count: targets.len(),
            cap: MAX_TARGETS,
        });
    }
    let mut bit = vec![0u32; tree.len()];
    for (i, &t) in targets.iter().enumerate() {
        *bit.get_mut(t).ok_or(OracleError::UnknownTarget(t))? |= 1 << i;
    }
    let full: u32 = if targets.is_empty() {
        0
    } else {
        u32::MAX >> (32 - targets.len())
    };
    let width = 1usize << targets.len();
    let index = |s: &CoverState| s.position * width + s.covered as usize;

    let start = CoverState {
        position: tree.root(),
        covered: bit[tree.root()],
        cost: 0,
    };
    let mut prev: Vec<Option<usize>> = vec![None; tree.len() * width];
    let mut seen = vec![false; tree.len() * width];
    seen[index(&start)] = true;
    // unit edge weights: FIFO order is uniform-cost order
    let mut queue = VecDeque::from([start]);
    let mut goal = None;
    while let Some(s) = queue.pop_front() {
        if s.covered == full {
            goal = Some(s);
            break;
        }
        for p in 0..tree.degree(s.position) {
            let (next, _) = tree.traverse(s.position, p).unwrap();
            let n = CoverState {
                position: next,
                covered: s.covered | bit[next],
                cost: s.cost + 1,
            };
            let i = index(&n);
            if !seen[i] {
                seen[i] = true;
                prev[i] = Some(index(&s));
                queue.push_back(n);
            }
        }
    }
    let goal = goal.expect("a tree is connected, so every target set is reachable");

    let mut nodes = vec![goal.position];
    let mut at = index(&goal);
    while let Some(p) = prev[at] {
        nodes.push(p / width);
        at = p;
    }
    nodes.reverse();
    let ports = nodes
        .windows(2)
        .map(|w| {
            (0..tree.degree(w[0]))
                .find(|&p| tree.traverse(w[0], p).unwrap().0 == w[1])
                .unwrap()
        })
        .collect();
    Ok(CoverWalk {
        cost: goal.cost,
        nodes,
        ports,
    })
}
