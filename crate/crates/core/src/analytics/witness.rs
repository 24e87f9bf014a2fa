use num_rational::Ratio;
use serde::Serialize;

use super::adversary::{heavy_first, spine_adversaries, star_pendant_representatives};
use super::overhead::{overhead, overhead_over, OverheadPolicy, OverheadQuery, OverheadReport};
use super::{AnalyticsError, Exactness};
use crate::generators::{generate, Family, GenSpec};
use crate::knowledge::KnowledgeKind;
use crate::strategies::StrategySpec;
use crate::tree::{relabeling_count, relabelings, PortTree, RelabelPolicy};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSide {
    pub kind: KnowledgeKind,
    pub strategy: StrategySpec,
    pub overhead: OverheadReport,
}

/// Overhead of a strategy with weaker knowledge against one with stronger
/// knowledge on the same family and radius. A witness, not a penalty value:
/// both sides are implemented strategies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PenaltyWitness {
    pub family: Family,
    pub m: usize,
    pub weaker: WitnessSide,
    pub stronger: WitnessSide,
    /// Analytic value the weaker side cannot go below, where one is known.
    pub weaker_floor: Option<Ratio<u64>>,
    pub ratio: Ratio<u64>,
}

fn side(candidates: &[PortTree], q: OverheadQuery, exactness: Exactness) -> Result<WitnessSide, AnalyticsError> {
    Ok(WitnessSide {
        kind: q.kind,
        strategy: q.strategy,
        overhead: overhead_over(candidates, &q, exactness, None)?,
    })
}

fn assemble(
    family: Family,
    m: usize,
    weaker: WitnessSide,
    stronger: WitnessSide,
    floor: Option<Ratio<u64>>,
) -> PenaltyWitness {
    let ratio = if *stronger.overhead.value.numer() == 0 {
        Ratio::from_integer(0)
    } else {
        weaker.overhead.value / stronger.overhead.value
    };
    PenaltyWitness {
        family,
        m,
        weaker,
        stronger,
        weaker_floor: floor,
        ratio,
    }
}

/// Star with a pendant: blind `dfs:2` told `d = 2` against the complete-map
/// optimum at radius 2. Exact over the `2n` orbit representatives.
pub fn penalty_witness_star(n: usize) -> Result<PenaltyWitness, AnalyticsError> {
    if n < 2 {
        return Err(AnalyticsError::Parameter("star witness needs n >= 2".into()));
    }
    let reps = star_pendant_representatives(n);
    let query = |strategy, kind| OverheadQuery {
        strategy,
        kind,
        m: 2,
        distance: Some(2),
    };
    let weaker = side(
        &reps,
        query(StrategySpec::Dfs(Some(2)), KnowledgeKind::BlindDist),
        Exactness::Exact,
    )?;
    let stronger = side(
        &reps,
        query(StrategySpec::Optimal, KnowledgeKind::CompleteDist),
        Exactness::Exact,
    )?;
    Ok(assemble(Family::StarPendant { n }, 2, weaker, stronger, None))
}

/// Caterpillar `T_ℓ`: blind distance-unaware search against the spine walk
/// told the distance, at radius `ℓ`. Exhaustive when the labeling family
/// fits under the policy cap; otherwise the adversarial labelings plus the
/// policy's samples, reported as sampled.
pub fn penalty_witness_caterpillar(l: usize, policy: &OverheadPolicy) -> Result<PenaltyWitness, AnalyticsError> {
    if l < 2 {
        return Err(AnalyticsError::Parameter("caterpillar witness needs l >= 2".into()));
    }
    let family = Family::Caterpillar { l };
    let base = generate(&GenSpec::sorted(family))?;
    let weak_q = OverheadQuery {
        strategy: StrategySpec::Algo1,
        kind: KnowledgeKind::BlindNoDist,
        m: l,
        distance: None,
    };
    let strong_q = OverheadQuery {
        strategy: StrategySpec::Spine,
        kind: KnowledgeKind::BlindDist,
        m: l,
        distance: None,
    };
    let floor = Some(Ratio::new(l as u64 + 4, 2));
    let exhaustive = relabeling_count(&base).is_some_and(|c| c <= policy.cap);
    let (weaker, stronger) = if exhaustive {
        let w = overhead(&base, &weak_q, policy)?;
        let s = overhead(&base, &strong_q, policy)?;
        (
            WitnessSide {
                kind: weak_q.kind,
                strategy: weak_q.strategy,
                overhead: w,
            },
            WitnessSide {
                kind: strong_q.kind,
                strategy: strong_q.strategy,
                overhead: s,
            },
        )
    } else {
        let mut cands = spine_adversaries(l);
        cands.push(heavy_first(&base));
        let sample = RelabelPolicy::Sample {
            count: policy.samples,
            seed: policy.seed,
        };
        cands.extend(relabelings(&base, sample, policy.cap)?);
        let exactness = Exactness::Sampled {
            count: cands.len(),
            seed: policy.seed,
        };
        (side(&cands, weak_q, exactness)?, side(&cands, strong_q, exactness)?)
    };
    Ok(assemble(family, l, weaker, stronger, floor))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingWitness {
    pub k: u32,
    pub m: usize,
    pub depth: usize,
    pub doubling: OverheadReport,
    pub incremental: OverheadReport,
    /// `2^{2m−2}/m`: level `m` is first swept at depth `2m − 2` or more.
    pub absolute_bound: Ratio<u64>,
    /// `2^{m−5}·O_incremental(m)`.
    pub relative_bound: Ratio<u64>,
    pub holds: bool,
}

/// Doubling against level-by-level deepening on the full binary tree of
/// depth `2^{k+1}` at radius `m = 2^k + 1`.
pub fn penalty_witness_doubling(k: u32) -> Result<DoublingWitness, AnalyticsError> {
    if !(1..=3).contains(&k) {
        return Err(AnalyticsError::Parameter(format!(
            "doubling witness needs 1 <= k <= 3 (depth 2^(k+1) within the node budget), got {k}"
        )));
    }
    let m = (1usize << k) + 1;
    let depth = 1usize << (k + 1);
    let tree = generate(&GenSpec::sorted(Family::FullBinary { h: depth }))?;
    // siblings span identical subtrees, so every labeling yields the same
    // port-order sweep costs: one labeling is exact
    let run = |strategy| {
        let q = OverheadQuery {
            strategy,
            kind: KnowledgeKind::BlindNoDist,
            m,
            distance: None,
        };
        overhead_over(std::slice::from_ref(&tree), &q, Exactness::Exact, None)
    };
    let doubling = run(StrategySpec::Doubling)?;
    let incremental = run(StrategySpec::Incremental)?;
    let absolute_bound = Ratio::new(1u64 << (2 * m - 2), m as u64);
    let relative_bound = if m >= 5 {
        incremental.value * Ratio::from_integer(1u64 << (m - 5))
    } else {
        incremental.value / Ratio::from_integer(1u64 << (5 - m))
    };
    let holds = doubling.value >= absolute_bound && doubling.value >= relative_bound;
    Ok(DoublingWitness {
        k,
        m,
        depth,
        doubling,
        incremental,
        absolute_bound,
        relative_bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::overhead;

    #[test]
    fn star_ratio_is_n() {
        for n in [2, 3, 7] {
            let w = penalty_witness_star(n).unwrap();
            assert_eq!(w.weaker.overhead.value, Ratio::from_integer(n as u64));
            assert_eq!(w.stronger.overhead.value, Ratio::from_integer(1));
            assert_eq!(w.ratio, Ratio::from_integer(n as u64));
        }
    }

    #[test]
    fn star_representatives_match_exhaustive() {
        let base = generate(&GenSpec::sorted(Family::StarPendant { n: 3 })).unwrap();
        let q = OverheadQuery {
            strategy: StrategySpec::Dfs(Some(2)),
            kind: KnowledgeKind::BlindDist,
            m: 2,
            distance: Some(2),
        };
        let full = overhead(&base, &q, &OverheadPolicy::default()).unwrap();
        assert_eq!(full.exactness, Exactness::Exact);
        assert_eq!(full.value, penalty_witness_star(3).unwrap().weaker.overhead.value);
    }

    #[test]
    fn small_doubling_witness() {
        let w = penalty_witness_doubling(2).unwrap();
        assert_eq!((w.m, w.depth), (5, 8));
        assert!(w.holds);
        assert_eq!(w.doubling.value, Ratio::new(1059, 5));
        assert!(penalty_witness_doubling(4).is_err());
    }

    #[test]
    fn caterpillar_witness_small() {
        let w = penalty_witness_caterpillar(3, &OverheadPolicy::default()).unwrap();
        assert_eq!(w.weaker.overhead.exactness, Exactness::Exact);
        assert!(w.weaker.overhead.value >= w.weaker_floor.unwrap());
        assert!(w.stronger.overhead.value <= Ratio::from_integer(7));
    }
}
