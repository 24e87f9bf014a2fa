use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Port, PortTree, TreeError};

/// Upper bound on `Π_v (deg v)!` for exhaustive enumeration.
pub const DEFAULT_RELABEL_CAP: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelabelPolicy {
    /// Every port assignment exactly once.
    Exhaustive,
    /// `count` assignments with an independent uniform permutation per node.
    Sample { count: usize, seed: u64 },
}

/// Number of distinct port assignments, `Π_v (deg v)!`; `None` on overflow.
pub fn relabeling_count(tree: &PortTree) -> Option<u64> {
    (0..tree.len()).try_fold(1u64, |acc, v| {
        (2..=tree.degree(v) as u64).try_fold(acc, |a, k| a.checked_mul(k))
    })
}

/// Stream of relabeled copies of `tree`. Node ids are preserved.
pub fn relabelings(tree: &PortTree, policy: RelabelPolicy, cap: u64) -> Result<Relabelings<'_>, TreeError> {
    let state = match policy {
        RelabelPolicy::Exhaustive => {
            let count = relabeling_count(tree);
            match count {
                Some(c) if c <= cap => State::Exhaustive {
                    perms: (0..tree.len()).map(|v| (0..tree.degree(v)).collect()).collect(),
                    done: false,
                },
                _ => return Err(TreeError::RelabelCap { count, cap }),
            }
        }
        RelabelPolicy::Sample { count, seed } => State::Sample {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            left: count,
        },
    };
    Ok(Relabelings { tree, state })
}

pub struct Relabelings<'a> {
    tree: &'a PortTree,
    state: State,
}

enum State {
    Exhaustive { perms: Vec<Vec<Port>>, done: bool },
    Sample { rng: Box<ChaCha8Rng>, left: usize },
}

impl Relabelings<'_> {
    pub fn is_exact(&self) -> bool {
        matches!(self.state, State::Exhaustive { .. })
    }
}

impl Iterator for Relabelings<'_> {
    type Item = PortTree;

    fn next(&mut self) -> Option<PortTree> {
        match &mut self.state {
            State::Exhaustive { perms, done } => {
                if *done {
                    return None;
                }
                let out = self
                    .tree
                    .permute_ports(perms)
                    .expect("permutation keeps ports contiguous");
                // odometer over per-node permutations
                *done = !perms.iter_mut().any(|p| next_permutation(p));
                Some(out)
            }
            State::Sample { rng, left } => {
                if *left == 0 {
                    return None;
                }
                *left -= 1;
                let perms: Vec<Vec<Port>> = (0..self.tree.len())
                    .map(|v| {
                        let mut p: Vec<Port> = (0..self.tree.degree(v)).collect();
                        p.shuffle(rng.as_mut());
                        p
                    })
                    .collect();
                Some(
                    self.tree
                        .permute_ports(&perms)
                        .expect("permutation keeps ports contiguous"),
                )
            }
        }
    }
}

/// Advances to the next lexicographic permutation; on wrap-around resets to
/// the identity and returns false.
fn next_permutation(p: &mut [Port]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
