use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::{generate, Family, GenSpec};
use crate::tree::{level_counts, PortTree};

/// Largest level kept in [`even_corpus`] trees, so the cover-walk oracle
/// can take any whole level as its target set.
pub const EVEN_TARGET_CAP: u64 = 12;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub family: Family,
    pub tree: PortTree,
}

fn entry(family: Family, port_seed: u64) -> CorpusEntry {
    let tree = generate(&GenSpec::seeded(family, port_seed)).expect("corpus parameters are in range");
    CorpusEntry { family, tree }
}

/// `count` random recursive trees with 1..=500 nodes and degree caps 2..=6.
pub fn random_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7261_6e64);
    (0..count)
        .map(|_| {
            let family = Family::Random {
                nodes: rng.gen_range(1..=500),
                max_degree: rng.gen_range(2..=6),
                seed: rng.gen(),
            };
            entry(family, rng.gen())
        })
        .collect()
}

/// `count` even trees of depth 1..=6, each level at most [`EVEN_TARGET_CAP`]
/// nodes. Oversized draws are replaced by the next draw of the same stream.
pub fn even_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6576_656e);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let family = Family::EvenRandom {
            depth: 1 + out.len() % 6,
            branching: rng.gen_range(1..=3),
            seed: rng.gen(),
        };
        let e = entry(family, rng.gen());
        if level_counts(&e.tree).counts().iter().all(|&c| c <= EVEN_TARGET_CAP) {
            out.push(e);
        }
    }
    out
}

/// Paths up to length 64, full binary trees up to height 8, caterpillars up
/// to `T_50`, star-pendants up to 50 arms, brooms up to 16 bristles, 200
/// random trees and 50 even trees. Ports are seeded per tree.
pub fn default_corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fixed: Vec<Family> = Vec::new();
    fixed.extend((1..=64).map(|l| Family::Path { l }));
    fixed.extend((1..=8).map(|h| Family::FullBinary { h }));
    fixed.extend((2..=50).map(|l| Family::Caterpillar { l }));
    fixed.extend((2..=50).map(|n| Family::StarPendant { n }));
    fixed.extend((1..=16).map(|k| Family::Broom { k }));
    let mut out: Vec<CorpusEntry> = fixed.into_iter().map(|f| entry(f, rng.gen())).collect();
    out.extend(random_corpus(seed, 200));
    out.extend(even_corpus(seed, 50));
    out
}
