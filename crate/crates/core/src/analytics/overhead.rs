use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{AnalyticsError, Exactness, Instance, DEFAULT_SEED};
use crate::engine::{check_consistent, cost_until_level, level_costs, run_consistent, RunOptions, StopRule};
use crate::engine::{run, EngineError, Trace};
use crate::knowledge::{Knowledge, KnowledgeKind};
use crate::strategies::StrategySpec;
use crate::tree::{blind_code, relabeling_count, relabelings, PortTree, RelabelPolicy, DEFAULT_RELABEL_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OverheadQuery {
    pub strategy: StrategySpec,
    pub kind: KnowledgeKind,
    /// Radius: only instances with `d <= m` count.
    pub m: usize,
    /// For distance kinds, the one distance the agent is told; `None` takes
    /// the maximum over every `d <= m`.
    pub distance: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverheadPolicy {
    /// Families of at most this many labelings are enumerated exhaustively.
    pub cap: u64,
    /// Labelings drawn when the family exceeds the cap.
    pub samples: usize,
    pub seed: u64,
    pub fuel: Option<u64>,
}

impl Default for OverheadPolicy {
    fn default() -> Self {
        Self {
            cap: DEFAULT_RELABEL_CAP,
            samples: 64,
            seed: DEFAULT_SEED,
            fuel: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Argmax {
    pub relabeling: u64,
    pub d: usize,
    pub cost: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverheadReport {
    pub strategy: StrategySpec,
    pub kind: KnowledgeKind,
    pub m: usize,
    pub distance: Option<usize>,
    /// `max C/d`; `0` when no instance lies within the radius.
    pub value: Ratio<u64>,
    pub argmax: Option<Argmax>,
    pub exactness: Exactness,
}

/// Costs `C(T, d)` of one labeling for each level in `levels`.
type Row = (u64, Vec<u64>);

struct Setup<'a> {
    strategy: StrategySpec,
    kind: KnowledgeKind,
    /// Shared blind knowledge; complete kinds build theirs per labeling.
    blind: Knowledge,
    levels: &'a [usize],
    fuel: Option<u64>,
}

impl Setup<'_> {
    fn run(&self, k: &Knowledge, env: &PortTree, opts: &RunOptions) -> Result<Trace, EngineError> {
        let mut s = self.strategy.build();
        if self.kind.is_complete() {
            run(s.as_mut(), k, env, opts)
        } else {
            run_consistent(s.as_mut(), k, env, opts)
        }
    }

    fn costs(&self, id: u64, env: &PortTree) -> Result<Vec<u64>, AnalyticsError> {
        let err = |d: Option<usize>| {
            move |source| AnalyticsError::Engine {
                instance: Instance { relabeling: id, d },
                source,
            }
        };
        let Some(&deepest) = self.levels.last() else {
            return Ok(Vec::new());
        };
        if !self.kind.is_complete() {
            // one shape check per labeling instead of one per run
            check_consistent(&self.blind, env).map_err(err(None))?;
        }
        let knowledge = |d: Option<usize>| -> Result<Knowledge, AnalyticsError> {
            Ok(if self.kind.is_complete() {
                Knowledge::new(self.kind, env, d)?
            } else {
                self.blind.with_distance(d)?
            })
        };
        if self.kind.has_distance() {
            self.levels
                .iter()
                .map(|&d| {
                    let k = knowledge(Some(d))?;
                    let opts = RunOptions {
                        fuel: self.fuel,
                        stop: StopRule::LevelCovered(d),
                    };
                    let trace = self.run(&k, env, &opts).map_err(err(Some(d)))?;
                    cost_until_level(&trace, env, d).map_err(err(Some(d)))
                })
                .collect()
        } else {
            let k = knowledge(None)?;
            let opts = RunOptions {
                fuel: self.fuel,
                stop: StopRule::LevelsCovered(deepest),
            };
            let trace = self.run(&k, env, &opts).map_err(err(None))?;
            let all = level_costs(&trace, env, deepest).map_err(err(None))?;
            Ok(self.levels.iter().map(|&d| all[d - 1]).collect())
        }
    }
}

fn collect<I>(setup: &Setup, candidates: I) -> Result<Vec<Row>, AnalyticsError>
where
    I: Iterator<Item = PortTree> + Send,
{
    let mut rows: Vec<(u64, Result<Vec<u64>, AnalyticsError>)> = candidates
        .enumerate()
        .par_bridge()
        .map(|(i, env)| (i as u64, setup.costs(i as u64, &env)))
        .collect();
    rows.sort_by_key(|r| r.0);
    // lowest failing labeling wins, independent of scheduling
    rows.into_iter().map(|(i, r)| r.map(|c| (i, c))).collect()
}

/// Maximum of `cost/d` over rows, restricted to `levels[..upto]`; ties go to
/// the lowest labeling, then the lowest level.
fn maximize(rows: &[Row], levels: &[usize], upto: usize) -> (Ratio<u64>, Option<Argmax>) {
    let mut best: Option<(Ratio<u64>, Argmax)> = None;
    for (id, costs) in rows {
        for (&d, &cost) in levels.iter().zip(costs).take(upto) {
            let v = Ratio::new(cost, d as u64);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((
                    v,
                    Argmax {
                        relabeling: *id,
                        d,
                        cost,
                    },
                ));
            }
        }
    }
    match best {
        Some((v, a)) => (v, Some(a)),
        None => (Ratio::from_integer(0), None),
    }
}

fn check_query(base: &PortTree, q: &OverheadQuery) -> Result<Vec<usize>, AnalyticsError> {
    if q.m < 1 {
        return Err(AnalyticsError::Parameter("radius m must be at least 1".into()));
    }
    match (q.kind.has_distance(), q.distance) {
        (false, Some(_)) => {
            return Err(AnalyticsError::Parameter(format!(
                "{} gives no distance to the agent",
                q.kind
            )))
        }
        (true, Some(0)) => return Err(AnalyticsError::Parameter("distance must be at least 1".into())),
        _ => {}
    }
    let top = q.m.min(base.depth());
    Ok(match q.distance {
        Some(d) if d <= top => vec![d],
        Some(_) => Vec::new(),
        None => (1..=top).collect(),
    })
}

fn candidates_for<'a>(
    base: &'a PortTree,
    kind: KnowledgeKind,
    policy: &OverheadPolicy,
) -> Result<(Box<dyn Iterator<Item = PortTree> + Send + 'a>, Exactness), AnalyticsError> {
    if kind.is_complete() {
        // a complete map pins the labeling
        return Ok((Box::new(std::iter::once(base.clone())), Exactness::Exact));
    }
    match relabeling_count(base) {
        Some(c) if c <= policy.cap => Ok((
            Box::new(relabelings(base, RelabelPolicy::Exhaustive, policy.cap)?),
            Exactness::Exact,
        )),
        _ => {
            let policy_s = RelabelPolicy::Sample {
                count: policy.samples,
                seed: policy.seed,
            };
            Ok((
                Box::new(relabelings(base, policy_s, policy.cap)?),
                Exactness::Sampled {
                    count: policy.samples,
                    seed: policy.seed,
                },
            ))
        }
    }
}

fn setup<'a>(base: &PortTree, q: &OverheadQuery, levels: &'a [usize], fuel: Option<u64>) -> Setup<'a> {
    Setup {
        strategy: q.strategy,
        kind: q.kind,
        blind: Knowledge::blind(blind_code(base), None).expect("no distance is always valid"),
        levels,
        fuel,
    }
}

/// Worst `C/d` over the instances the knowledge cannot tell apart: the
/// labelings of `base` for blind kinds, `base` alone for complete kinds.
pub fn overhead(base: &PortTree, q: &OverheadQuery, policy: &OverheadPolicy) -> Result<OverheadReport, AnalyticsError> {
    let levels = check_query(base, q)?;
    let (cands, exactness) = candidates_for(base, q.kind, policy)?;
    let s = setup(base, q, &levels, policy.fuel);
    let rows = collect(&s, cands)?;
    let (value, argmax) = maximize(&rows, &levels, levels.len());
    Ok(OverheadReport {
        strategy: q.strategy,
        kind: q.kind,
        m: q.m,
        distance: q.distance,
        value,
        argmax,
        exactness,
    })
}

/// As [`overhead`], over an explicit list of labelings of one shape.
/// Relabeling ids are positions in `candidates`.
pub fn overhead_over(
    candidates: &[PortTree],
    q: &OverheadQuery,
    exactness: Exactness,
    fuel: Option<u64>,
) -> Result<OverheadReport, AnalyticsError> {
    let base = candidates
        .first()
        .ok_or_else(|| AnalyticsError::Parameter("no candidate labelings".into()))?;
    let levels = check_query(base, q)?;
    let s = setup(base, q, &levels, fuel);
    let rows = collect(&s, candidates.iter().cloned())?;
    let (value, argmax) = maximize(&rows, &levels, levels.len());
    Ok(OverheadReport {
        strategy: q.strategy,
        kind: q.kind,
        m: q.m,
        distance: q.distance,
        value,
        argmax,
        exactness,
    })
}

/// `O(1), …, O(max_m)` from one pass over the labelings.
pub fn overhead_curve(
    base: &PortTree,
    strategy: StrategySpec,
    kind: KnowledgeKind,
    max_m: usize,
    policy: &OverheadPolicy,
) -> Result<Vec<OverheadReport>, AnalyticsError> {
    let q = OverheadQuery {
        strategy,
        kind,
        m: max_m,
        distance: None,
    };
    let levels = check_query(base, &q)?;
    let (cands, exactness) = candidates_for(base, kind, policy)?;
    let s = setup(base, &q, &levels, policy.fuel);
    let rows = collect(&s, cands)?;
    Ok((1..=max_m)
        .map(|m| {
            let (value, argmax) = maximize(&rows, &levels, m.min(levels.len()));
            OverheadReport {
                strategy,
                kind,
                m,
                distance: None,
                value,
                argmax,
                exactness,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, GenSpec};

    fn sorted(f: Family) -> PortTree {
        generate(&GenSpec::sorted(f)).unwrap()
    }

    fn q(strategy: &str, kind: KnowledgeKind, m: usize, distance: Option<usize>) -> OverheadQuery {
        OverheadQuery {
            strategy: strategy.parse().unwrap(),
            kind,
            m,
            distance,
        }
    }

    #[test]
    fn algo1_on_path() {
        let t = sorted(Family::Path { l: 8 });
        let r = overhead(
            &t,
            &q("algo1", KnowledgeKind::BlindNoDist, 5, None),
            &OverheadPolicy::default(),
        )
        .unwrap();
        assert_eq!(r.exactness, Exactness::Exact);
        // per-level costs 1, 4, 9, 10, 19 on a path: d = 5 dominates
        assert_eq!(r.value, Ratio::new(19, 5));
        assert_eq!(r.argmax.unwrap().d, 5);
    }

    #[test]
    fn dfs1_on_star() {
        let t = sorted(Family::Star { n: 3 });
        let r = overhead(
            &t,
            &q("dfs:1", KnowledgeKind::BlindDist, 1, Some(1)),
            &OverheadPolicy::default(),
        )
        .unwrap();
        assert_eq!(r.value, Ratio::from_integer(5));
        assert_eq!(r.exactness, Exactness::Exact);
    }

    #[test]
    fn empty_family_is_zero() {
        let t = PortTree::from_parents(&[None], crate::tree::PortMode::Sorted).unwrap();
        let r = overhead(
            &t,
            &q("algo1", KnowledgeKind::BlindNoDist, 1, None),
            &OverheadPolicy::default(),
        )
        .unwrap();
        assert_eq!(r.value, Ratio::from_integer(0));
        assert_eq!(r.argmax, None);
        let far = overhead(
            &sorted(Family::Path { l: 3 }),
            &q("dfs", KnowledgeKind::BlindDist, 2, Some(3)),
            &OverheadPolicy::default(),
        )
        .unwrap();
        assert_eq!(far.value, Ratio::from_integer(0));
    }

    #[test]
    fn curve_is_monotone_and_matches_single_reports() {
        let t = sorted(Family::Caterpillar { l: 3 });
        let policy = OverheadPolicy {
            cap: 0,
            samples: 12,
            ..OverheadPolicy::default()
        };
        let curve = overhead_curve(&t, StrategySpec::Algo1, KnowledgeKind::BlindNoDist, 4, &policy).unwrap();
        assert!(curve.windows(2).all(|w| w[0].value <= w[1].value));
        let single = overhead(&t, &q("algo1", KnowledgeKind::BlindNoDist, 2, None), &policy).unwrap();
        assert_eq!(single, curve[1]);
        assert_eq!(curve[3].value, curve[2].value);
    }

    #[test]
    fn bad_queries() {
        let t = sorted(Family::Path { l: 3 });
        let p = OverheadPolicy::default();
        assert!(overhead(&t, &q("algo1", KnowledgeKind::BlindNoDist, 0, None), &p).is_err());
        assert!(overhead(&t, &q("algo1", KnowledgeKind::BlindNoDist, 2, Some(1)), &p).is_err());
        let e = overhead(&t, &q("dfs:1", KnowledgeKind::BlindNoDist, 2, None), &p).unwrap_err();
        assert!(matches!(
            e,
            AnalyticsError::Engine {
                instance: Instance { relabeling: 0, .. },
                ..
            }
        ));
    }
}
