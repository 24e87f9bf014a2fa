use serde::Serialize;

use crate::engine::{cost_until_level, Trace};
use crate::strategies::ScheduleTrace;
use crate::tree::{level_counts, PortTree};

/// One assertion: `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// 1-based sweep index, when the check belongs to one sweep.
    pub step: Option<usize>,
    pub pass: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleBoundReport {
    pub d: usize,
    /// 1-based index `l` of the first sweep reaching `d`.
    pub covering_step: usize,
    pub cost: u64,
    /// `16·L_1^d − cost`, negative when the bound fails.
    pub slack: i64,
    /// Whether any checked step took the pull-back branch.
    pub pull_back_seen: bool,
    pub checks: Vec<Check>,
}

impl ScheduleBoundReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn check(name: &str, step: Option<usize>, lhs: u64, rhs: u64, pass: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        step,
        pass,
        lhs,
        rhs,
        detail,
    }
}

/// Checks the blind schedule against its cost analysis for target level `d`:
/// strictly increasing sweep levels; the doubling-or-pull-back alternative
/// between consecutive sweeps; the per-sweep bounds `C_i <= 4·L_1^{h_i}`
/// (`6·` after a pull-back); and `C_l`, `C(T, d) <= 16·L_1^d`.
///
/// Steps that were clamped to the depth, and their predecessors' alternative
/// (which looks one step ahead), are exempt from the per-sweep checks.
pub fn check_lemma2(tree: &PortTree, trace: &Trace, schedule: &ScheduleTrace, d: usize) -> ScheduleBoundReport {
    let profile = level_counts(tree);
    let big_l = |h: usize| profile.up_to(h);
    let steps = &schedule.steps;
    let mut checks = Vec::new();
    let l = schedule.covering_index(d).map_or(steps.len(), |i| i + 1);
    let bound = 16 * big_l(d);

    if l == 0 || l > steps.len() {
        checks.push(check(
            "covering_sweep",
            None,
            d as u64,
            profile.depth() as u64,
            false,
            "no sweep reaches d".into(),
        ));
        return ScheduleBoundReport {
            d,
            covering_step: l,
            cost: 0,
            slack: 0,
            pull_back_seen: false,
            checks,
        };
    }
    // 1-based accessors
    let h = |i: usize| steps[i - 1].level;
    let b = |i: usize| steps[i - 1].pulled_back;
    let clamped = |i: usize| steps[i - 1].clamped;
    let cum = |i: usize| steps[i - 1].cumulative_cost;

    for i in 2..=l {
        checks.push(check(
            "strict_increase",
            Some(i),
            h(i - 1) as u64,
            h(i) as u64,
            h(i - 1) < h(i),
            format!("h_{} = {} < h_{i} = {}", i - 1, h(i - 1), h(i)),
        ));
    }

    let mut pull_back_seen = false;
    for i in 2..l {
        if clamped(i) || clamped(i + 1) {
            continue;
        }
        let (prev, cur, next) = (big_l(h(i - 1)), big_l(h(i)), big_l(h(i + 1)));
        let (pass, detail) = if !b(i - 1) {
            (cur >= 2 * prev, format!("no pull-back: L(h_i) = {cur} >= 2·{prev}"))
        } else {
            pull_back_seen = true;
            let ok = next >= 4 * prev && cur < 2 * prev && next >= 2 * cur && !b(i);
            (
                ok,
                format!(
                    "pull-back: L(h_(i+1)) = {next} >= 4·{prev}, L(h_i) = {cur} < 2·{prev}, {next} >= 2·{cur}, b_i = {}",
                    b(i)
                ),
            )
        };
        checks.push(check("growth_alternative", Some(i), cur, prev, pass, detail));
    }

    for i in 1..=l {
        if clamped(i) {
            continue;
        }
        let factor = if i == 1 || !b(i - 1) { 4 } else { 6 };
        pull_back_seen |= i > 1 && b(i - 1);
        let rhs = factor * big_l(h(i));
        checks.push(check(
            "sweep_cost",
            Some(i),
            cum(i),
            rhs,
            cum(i) <= rhs,
            format!("C_{i} = {} <= {factor}·L_1^{}", cum(i), h(i)),
        ));
    }

    checks.push(check(
        "schedule_cost",
        Some(l),
        cum(l),
        bound,
        cum(l) <= bound,
        format!("C_{l} = {} <= 16·L_1^{d}", cum(l)),
    ));

    let cost = match cost_until_level(trace, tree, d) {
        Ok(c) => {
            checks.push(check(
                "measured_cost",
                None,
                c,
                bound,
                c <= bound,
                format!("C(T, {d}) = {c} <= 16·L_1^{d}"),
            ));
            c
        }
        Err(e) => {
            checks.push(check("measured_cost", None, 0, bound, false, e.to_string()));
            0
        }
    };

    ScheduleBoundReport {
        d,
        covering_step: l,
        cost,
        slack: bound as i64 - cost as i64,
        pull_back_seen,
        checks,
    }
}
