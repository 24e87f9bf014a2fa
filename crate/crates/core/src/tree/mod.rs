//! Port-numbered rooted trees.
//!
//! A [`PortTree`] is the ground-truth environment an agent moves in. Every
//! node of degree `δ` labels its incident edges with the ports `0..δ`, and the
//! labelling carries no global consistency: the port leading to the parent is
//! stored explicitly and may be any of them.

mod blind;
mod json;
mod profile;
mod relabel;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use blind::{blind_code, BlindMap};
pub use json::{from_json, to_json};
pub use profile::{level_counts, LevelProfile};
pub use relabel::{relabeling_count, relabelings, RelabelPolicy, Relabelings, DEFAULT_RELABEL_CAP};

pub type NodeId = usize;
pub type Port = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid tree: {}", display_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("level range [{d1}, {d2}] outside [1, {depth}]")]
    LevelRange { d1: usize, d2: usize, depth: usize },
    #[error("exhaustive relabeling refused: {} assignments exceed the cap of {cap}", count.map_or_else(|| "more than 2^64".to_string(), |c| c.to_string()))]
    RelabelCap { count: Option<u64>, cap: u64 },
    #[error("invalid level profile: {0}")]
    Profile(String),
    #[error("malformed tree json: {0}")]
    Json(String),
}

fn display_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A single structural defect found by [`validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("tree has no nodes")]
    Empty,
    #[error("expected exactly one root, found {0:?}")]
    RootCount(Vec<NodeId>),
    #[error("node {node}: parent and parent_port must be both present or both absent")]
    ParentPort { node: NodeId },
    #[error("node {node}: references missing node {target}")]
    Dangling { node: NodeId, target: NodeId },
    #[error("node {node}: parent link to {parent} is not mirrored by a child entry")]
    ParentLink { node: NodeId, parent: NodeId },
    #[error("node {node}: incident ports {ports:?} are not 0..{degree}")]
    PortSet {
        node: NodeId,
        ports: Vec<Port>,
        degree: usize,
    },
    #[error("node {node}: not reachable from the root")]
    Unreachable { node: NodeId },
}

/// Raw node record. `children` holds `(port at this node, child id)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NodeRecord {
    pub parent: Option<NodeId>,
    pub parent_port: Option<Port>,
    pub children: Vec<(Port, NodeId)>,
}

impl NodeRecord {
    pub fn degree(&self) -> usize {
        self.children.len() + usize::from(self.parent.is_some())
    }
}

/// Checks every structural invariant of a port-numbered rooted tree and lists
/// each violation found.
pub fn validate(nodes: &[NodeRecord]) -> Result<(), Vec<Violation>> {
    if nodes.is_empty() {
        return Err(vec![Violation::Empty]);
    }
    let n = nodes.len();
    let mut out = Vec::new();

    let roots: Vec<NodeId> = (0..n).filter(|&v| nodes[v].parent.is_none()).collect();
    if roots.len() != 1 {
        out.push(Violation::RootCount(roots.clone()));
    }

    for (v, rec) in nodes.iter().enumerate() {
        if rec.parent.is_some() != rec.parent_port.is_some() {
            out.push(Violation::ParentPort { node: v });
        }
        if let Some(p) = rec.parent {
            if p >= n {
                out.push(Violation::Dangling { node: v, target: p });
            } else if !nodes[p].children.iter().any(|&(_, c)| c == v) {
                out.push(Violation::ParentLink { node: v, parent: p });
            }
        }
        for &(_, c) in &rec.children {
            if c >= n {
                out.push(Violation::Dangling { node: v, target: c });
            } else if nodes[c].parent != Some(v) {
                out.push(Violation::ParentLink { node: c, parent: v });
            }
        }
        let degree = rec.degree();
        let mut ports: Vec<Port> = rec.children.iter().map(|&(p, _)| p).collect();
        ports.extend(rec.parent_port.filter(|_| rec.parent.is_some()));
        ports.sort_unstable();
        if ports.iter().copied().ne(0..degree) {
            out.push(Violation::PortSet { node: v, ports, degree });
        }
    }

    if let [root] = roots[..] {
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &(_, c) in &nodes[v].children {
                if c < n && !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        out.extend((0..n).filter(|&v| !seen[v]).map(|node| Violation::Unreachable { node }));
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// How generated trees get their port numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortMode {
    /// Children take ports `0..c` in construction order; the parent edge takes `c`.
    Sorted,
    /// An independent uniform permutation of the incident ports at every node.
    Seeded(u64),
}

/// Immutable, validated port-numbered rooted tree.
#[derive(Debug, Clone)]
pub struct PortTree {
    nodes: Vec<NodeRecord>,
    root: NodeId,
    depth: usize,
    level: Vec<usize>,
    // port_map[v][p] = (neighbour reached through port p, port at that neighbour)
    port_map: Vec<Vec<(NodeId, Port)>>,
}

impl PartialEq for PortTree {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.nodes == other.nodes
    }
}

impl Eq for PortTree {}

impl PortTree {
    pub fn new(mut nodes: Vec<NodeRecord>) -> Result<Self, TreeError> {
        validate(&nodes).map_err(TreeError::Invalid)?;
        for rec in &mut nodes {
            rec.children.sort_unstable();
        }
        let root = nodes.iter().position(|r| r.parent.is_none()).unwrap();

        let n = nodes.len();
        let mut level = vec![0; n];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(_, c) in &nodes[v].children {
                level[c] = level[v] + 1;
                stack.push(c);
            }
        }
        let depth = level.iter().copied().max().unwrap_or(0);

        let mut port_map: Vec<Vec<(NodeId, Port)>> = nodes
            .iter()
            .map(|r| vec![(usize::MAX, usize::MAX); r.degree()])
            .collect();
        for (v, rec) in nodes.iter().enumerate() {
            for &(p, c) in &rec.children {
                let up = nodes[c].parent_port.unwrap();
                port_map[v][p] = (c, up);
                port_map[c][up] = (v, p);
            }
        }

        Ok(Self {
            nodes,
            root,
            depth,
            level,
            port_map,
        })
    }

    /// Builds a tree from a parent array (`parents[v] = None` for the root).
    /// Children of a node are ordered by increasing id before ports are
    /// assigned.
    pub fn from_parents(parents: &[Option<NodeId>], mode: PortMode) -> Result<Self, TreeError> {
        let n = parents.len();
        let mut child_ids: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(TreeError::Invalid(vec![Violation::Dangling { node: v, target: p }]));
                }
                child_ids[p].push(v);
            }
        }
        let mut rng = match mode {
            PortMode::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            PortMode::Sorted => None,
        };
        let mut nodes: Vec<NodeRecord> = parents
            .iter()
            .map(|&parent| NodeRecord {
                parent,
                ..NodeRecord::default()
            })
            .collect();
        for v in 0..n {
            let c = child_ids[v].len();
            let degree = c + usize::from(parents[v].is_some());
            let mut ports: Vec<Port> = (0..degree).collect();
            if let Some(rng) = rng.as_mut() {
                ports.shuffle(rng);
            }
            nodes[v].children = child_ids[v].iter().zip(&ports).map(|(&id, &p)| (p, id)).collect();
            if parents[v].is_some() {
                nodes[v].parent_port = Some(ports[c]);
            }
        }
        Self::new(nodes)
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, v: NodeId) -> &NodeRecord {
        &self.nodes[v]
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    pub fn level(&self, v: NodeId) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.port_map[v].len()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v].parent
    }

    /// Children of `v` as `(port at v, child)`, in increasing port order.
    pub fn children(&self, v: NodeId) -> &[(Port, NodeId)] {
        &self.nodes[v].children
    }

    /// Follows `port` out of `v`: returns the neighbour and the port by which
    /// it is entered.
    pub fn traverse(&self, v: NodeId, port: Port) -> Option<(NodeId, Port)> {
        self.port_map.get(v)?.get(port).copied()
    }

    /// Nodes at exactly level `d`.
    pub fn nodes_at_level(&self, d: usize) -> impl Iterator<Item = NodeId> + '_ {
        self.level
            .iter()
            .enumerate()
            .filter(move |&(_, &l)| l == d)
            .map(|(v, _)| v)
    }

    /// Applies a port permutation at every node: `perms[v][old] = new`.
    /// Node ids are kept, so traces on relabeled copies stay comparable.
    pub fn permute_ports(&self, perms: &[Vec<Port>]) -> Result<Self, TreeError> {
        let nodes = self
            .nodes
            .iter()
            .zip(perms)
            .map(|(rec, perm)| NodeRecord {
                parent: rec.parent,
                parent_port: rec.parent_port.map(|p| perm[p]),
                children: rec.children.iter().map(|&(p, c)| (perm[p], c)).collect(),
            })
            .collect();
        Self::new(nodes)
    }

    /// Returns a copy with node ids renumbered in preorder (children by
    /// increasing port), so the root becomes id 0.
    pub fn renumbered(&self) -> Self {
        let order = self.preorder();
        let mut new_id = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let nodes = order
            .iter()
            .map(|&v| {
                let rec = &self.nodes[v];
                NodeRecord {
                    parent: rec.parent.map(|p| new_id[p]),
                    parent_port: rec.parent_port,
                    children: rec.children.iter().map(|&(p, c)| (p, new_id[c])).collect(),
                }
            })
            .collect();
        Self::new(nodes).expect("renumbering preserves validity")
    }

    /// Preorder node sequence, visiting children by increasing port.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev().map(|&(_, c)| c));
        }
        out
    }

    /// Number of nodes in the subtree of every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.nodes[v].parent {
                size[p] += size[v];
            }
        }
        size
    }
}
