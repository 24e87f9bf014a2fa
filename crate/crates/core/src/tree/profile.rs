use serde::{Deserialize, Serialize};

use super::{PortTree, TreeError};

/// Node counts per level, `l_0 ..= l_h`, with prefix sums for range queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct LevelProfile {
    counts: Vec<u64>,
    // prefix[d] = counts[0] + ... + counts[d]
    prefix: Vec<u64>,
}

impl TryFrom<Vec<u64>> for LevelProfile {
    type Error = TreeError;

    fn try_from(counts: Vec<u64>) -> Result<Self, Self::Error> {
        Self::from_counts(counts)
    }
}

impl From<LevelProfile> for Vec<u64> {
    fn from(p: LevelProfile) -> Self {
        p.counts
    }
}

impl LevelProfile {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self, TreeError> {
        if counts.first() != Some(&1) {
            return Err(TreeError::Profile("level 0 must hold exactly the root".into()));
        }
        if let Some(d) = counts.iter().position(|&c| c == 0) {
            return Err(TreeError::Profile(format!("level {d} is empty")));
        }
        let prefix = counts
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        Ok(Self { counts, prefix })
    }

    pub fn depth(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_nodes(&self) -> u64 {
        *self.prefix.last().unwrap()
    }

    /// `l_d`; zero beyond the depth.
    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// `L_{d1}^{d2}` for `1 <= d1 <= d2 <= depth`.
    pub fn cumulative(&self, d1: usize, d2: usize) -> Result<u64, TreeError> {
        if d1 < 1 || d1 > d2 || d2 > self.depth() {
            return Err(TreeError::LevelRange {
                d1,
                d2,
                depth: self.depth(),
            });
        }
        Ok(self.prefix[d2] - self.prefix[d1 - 1])
    }

    /// `L_1^d`, with levels beyond the depth counting as empty.
    pub fn up_to(&self, d: usize) -> u64 {
        self.prefix[d.min(self.depth())] - 1
    }

    /// `L_{d1}^{d2}` with empty levels beyond the depth; zero when `d1 > d2`.
    pub fn span(&self, d1: usize, d2: usize) -> u64 {
        if d1 > d2 || d1 > self.depth() {
            return 0;
        }
        let hi = self.prefix[d2.min(self.depth())];
        let lo = if d1 == 0 { 0 } else { self.prefix[d1 - 1] };
        hi - lo
    }
}

pub fn level_counts(tree: &PortTree) -> LevelProfile {
    let mut counts = vec![0u64; tree.depth() + 1];
    for &l in tree.levels() {
        counts[l] += 1;
    }
    LevelProfile::from_counts(counts).expect("levels of a valid tree are contiguous")
}
