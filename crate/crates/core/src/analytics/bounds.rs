use num_rational::Ratio;

use crate::tree::{LevelProfile, TreeError};

/// `max_{1 <= d <= min(depth, m)} L_1^d / d`, a floor on the overhead of
/// every distance-unaware search. `0` on a single-node tree.
pub fn lower_bound_no_distance(profile: &LevelProfile, m: usize) -> Ratio<u64> {
    (1..=m.min(profile.depth()))
        .map(|d| Ratio::new(profile.up_to(d), d as u64))
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0))
}

/// `2(l_d − 1) + d`, a floor on the cost of covering level `d`.
pub fn lower_bound_known_distance(profile: &LevelProfile, d: usize) -> Result<u64, TreeError> {
    if d < 1 || d > profile.depth() {
        return Err(TreeError::LevelRange {
            d1: d,
            d2: d,
            depth: profile.depth(),
        });
    }
    Ok(2 * (profile.count(d) - 1) + d as u64)
}

/// `16·m·max_{d <= m} (2(l_d − 1) + d) / d`, the linear ceiling on the
/// blind search's overhead.
pub fn linear_ceiling(profile: &LevelProfile, m: usize) -> Ratio<u64> {
    let worst = (1..=m.min(profile.depth()))
        .map(|d| Ratio::new(2 * (profile.count(d) - 1) + d as u64, d as u64))
        .max()
        .unwrap_or_else(|| Ratio::from_integer(0));
    worst * Ratio::from_integer(16 * m as u64)
}
