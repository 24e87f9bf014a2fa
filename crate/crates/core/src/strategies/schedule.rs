//! The level schedule of the blind-map search: after a sweep to level `h`,
//! the next level is the smallest `k > h` with `L_{h+1}^k >= L_1^h`, pulled
//! back to `k - 1` when that overshoots (`L_{h+1}^k >= 3·L_1^h` and
//! `k >= h + 2`).

use serde::Serialize;

use crate::tree::LevelProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScheduleStep {
    /// Level of this sweep (`h_i`).
    pub level: usize,
    /// Threshold level computed after the sweep (`k_i`); absent on the last
    /// step and when no level below the depth reaches the threshold.
    pub threshold: Option<usize>,
    /// Whether the pull-back branch was taken (`b_i`).
    pub pulled_back: bool,
    /// `C_i = Σ_{j<=i} 2·L_1^{h_j}`.
    pub cumulative_cost: u64,
    /// The level was cut to the tree depth because no threshold existed.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleTrace {
    pub steps: Vec<ScheduleStep>,
}

impl ScheduleTrace {
    pub fn levels(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.level).collect()
    }

    /// 0-based index of the first sweep reaching level `d`.
    pub fn covering_index(&self, d: usize) -> Option<usize> {
        self.steps.iter().position(|s| s.level >= d)
    }
}

/// Computes the whole schedule without moving, up to the first level
/// reaching the depth of the profile.
pub fn blind_schedule(profile: &LevelProfile) -> ScheduleTrace {
    let depth = profile.depth();
    let mut steps = Vec::new();
    if depth == 0 {
        return ScheduleTrace { steps };
    }
    let mut h = 1;
    let mut clamped = false;
    let mut cost = 0;
    loop {
        let explored = profile.up_to(h);
        cost += 2 * explored;
        if h >= depth {
            steps.push(ScheduleStep {
                level: h,
                threshold: None,
                pulled_back: false,
                cumulative_cost: cost,
                clamped,
            });
            break;
        }
        let threshold = (h + 1..=depth).find(|&i| profile.span(h + 1, i) >= explored);
        let (next, pulled_back) = match threshold {
            Some(k) => {
                let b = profile.span(h + 1, k) >= 3 * explored && k >= h + 2;
                (if b { k - 1 } else { k }, b)
            }
            None => (depth, false),
        };
        steps.push(ScheduleStep {
            level: h,
            threshold,
            pulled_back,
            cumulative_cost: cost,
            clamped,
        });
        clamped = threshold.is_none();
        h = next;
    }
    ScheduleTrace { steps }
}
