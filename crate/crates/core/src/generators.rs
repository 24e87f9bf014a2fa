//! Tree families: the adversarial constructions plus seeded random corpora.
//!
//! Node ids follow a fixed layout per family. The caterpillar places its spine `u_0..=u_ℓ` at ids
//! `0..=ℓ`; the star with a pendant uses id 1 for `u` and the last id for `t`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{NodeId, PortMode, PortTree};

/// Largest tree any generator will build.
pub const NODE_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("tree would need {required} nodes, over the budget of {budget}")]
    Budget { required: u64, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Root with `n` leaves.
    Star {
        n: usize,
    },
    /// Root with `n` children, one of which (`u`) has a single child `t`.
    StarPendant {
        n: usize,
    },
    /// Spine `u_0..u_ℓ`; for `i <= ℓ-2`, `u_i` has an extra child `v_{i+1}`
    /// carrying `i+3` leaves.
    Caterpillar {
        l: usize,
    },
    FullBinary {
        h: usize,
    },
    Path {
        l: usize,
    },
    /// Root with two children, one grandchild, and `k` great-grandchildren:
    /// profile `[1, 2, 1, k]`.
    Broom {
        k: usize,
    },
    /// Every leaf at level `depth`; each inner node has `1..=branching` children.
    EvenRandom {
        depth: usize,
        branching: usize,
        seed: u64,
    },
    /// Random recursive tree with degrees capped at `max_degree`.
    Random {
        nodes: usize,
        max_degree: usize,
        seed: u64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Star { .. } => "star",
            Family::StarPendant { .. } => "star_pendant",
            Family::Caterpillar { .. } => "caterpillar",
            Family::FullBinary { .. } => "full_binary",
            Family::Path { .. } => "path",
            Family::Broom { .. } => "broom",
            Family::EvenRandom { .. } => "even_random",
            Family::Random { .. } => "random",
        }
    }

    pub fn param(&self) -> String {
        match *self {
            Family::Star { n } | Family::StarPendant { n } => format!("n={n}"),
            Family::Caterpillar { l } | Family::Path { l } => format!("l={l}"),
            Family::FullBinary { h } => format!("h={h}"),
            Family::Broom { k } => format!("k={k}"),
            Family::EvenRandom { depth, branching, seed } => {
                format!("depth={depth};branching={branching};seed={seed}")
            }
            Family::Random {
                nodes,
                max_degree,
                seed,
            } => {
                format!("nodes={nodes};max_degree={max_degree};seed={seed}")
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.param())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub ports: PortMode,
}

impl GenSpec {
    pub fn seeded(family: Family, seed: u64) -> Self {
        Self {
            family,
            ports: PortMode::Seeded(seed),
        }
    }

    pub fn sorted(family: Family) -> Self {
        Self {
            family,
            ports: PortMode::Sorted,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<PortTree, GenError> {
    let parents = shape(&spec.family)?;
    Ok(PortTree::from_parents(&parents, spec.ports).expect("generated shapes are trees"))
}

/// Parent array of a family, before any ports are assigned.
pub fn shape(family: &Family) -> Result<Vec<Option<NodeId>>, GenError> {
    match *family {
        Family::Star { n } => {
            require(n >= 1, "star needs n >= 1")?;
            budget(n as u64 + 1)?;
            Ok(std::iter::once(None).chain(std::iter::repeat_n(Some(0), n)).collect())
        }
        Family::StarPendant { n } => star_pendant(n),
        Family::Caterpillar { l } => caterpillar(l),
        Family::FullBinary { h } => full_binary(h),
        Family::Path { l } => {
            budget(l as u64 + 1)?;
            Ok((0..=l).map(|i| i.checked_sub(1)).collect())
        }
        Family::Broom { k } => {
            require(k >= 1, "broom needs k >= 1")?;
            budget(k as u64 + 4)?;
            let mut p = vec![None, Some(0), Some(0), Some(1)];
            p.extend(std::iter::repeat_n(Some(3), k));
            Ok(p)
        }
        Family::EvenRandom { depth, branching, seed } => even_random(depth, branching, seed),
        Family::Random {
            nodes,
            max_degree,
            seed,
        } => random(nodes, max_degree, seed),
    }
}

fn require(ok: bool, msg: &str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::Parameter(msg.to_string()))
    }
}

fn budget(required: u64) -> Result<(), GenError> {
    if required > NODE_BUDGET {
        Err(GenError::Budget {
            required,
            budget: NODE_BUDGET,
        })
    } else {
        Ok(())
    }
}

fn star_pendant(n: usize) -> Result<Vec<Option<NodeId>>, GenError> {
    require(n >= 2, "star_pendant needs n >= 2")?;
    budget(n as u64 + 2)?;
    let mut p = vec![None];
    p.extend(std::iter::repeat_n(Some(0), n));
    p.push(Some(1));
    Ok(p)
}

/// Node count of the caterpillar `T_ℓ`: `(ℓ² + 7ℓ − 4) / 2`.
pub fn caterpillar_nodes(l: usize) -> u64 {
    let l = l as u64;
    (l * l + 7 * l - 4) / 2
}

fn caterpillar(l: usize) -> Result<Vec<Option<NodeId>>, GenError> {
    require(l >= 2, "caterpillar needs l >= 2")?;
    budget(caterpillar_nodes(l))?;
    let mut p: Vec<Option<NodeId>> = (0..=l).map(|i| i.checked_sub(1)).collect();
    for i in 0..=l - 2 {
        let v = p.len();
        p.push(Some(i));
        p.extend(std::iter::repeat_n(Some(v), i + 3));
    }
    Ok(p)
}

fn full_binary(h: usize) -> Result<Vec<Option<NodeId>>, GenError> {
    require(h >= 1, "full_binary needs h >= 1")?;
    let required = 1u64.checked_shl(h as u32 + 1).map_or(u64::MAX, |x| x - 1);
    budget(required)?;
    Ok((0..required as usize)
        .map(|i| i.checked_sub(1).map(|j| j / 2))
        .collect())
}

fn even_random(depth: usize, branching: usize, seed: u64) -> Result<Vec<Option<NodeId>>, GenError> {
    require(branching >= 1, "even_random needs branching >= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parents = vec![None];
    let mut frontier = vec![0];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &v in &frontier {
            let kids = rng.gen_range(1..=branching);
            for _ in 0..kids {
                next.push(parents.len());
                parents.push(Some(v));
            }
        }
        budget(parents.len() as u64)?;
        frontier = next;
    }
    Ok(parents)
}

fn random(nodes: usize, max_degree: usize, seed: u64) -> Result<Vec<Option<NodeId>>, GenError> {
    require(nodes >= 1, "random needs at least one node")?;
    require(
        nodes <= 2 || max_degree >= 2,
        "random trees with more than two nodes need max_degree >= 2",
    )?;
    require(
        nodes <= 1 || max_degree >= 1,
        "random trees with two nodes need max_degree >= 1",
    )?;
    budget(nodes as u64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parents = vec![None];
    // (node, remaining child slots)
    let mut open: Vec<(NodeId, usize)> = vec![(0, max_degree)];
    for v in 1..nodes {
        let i = rng.gen_range(0..open.len());
        parents.push(Some(open[i].0));
        open[i].1 -= 1;
        if open[i].1 == 0 {
            open.swap_remove(i);
        }
        if max_degree > 1 {
            open.push((v, max_degree - 1));
        }
    }
    Ok(parents)
}
