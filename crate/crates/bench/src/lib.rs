//! Fixtures shared by the benchmarks.

use hunt_core::generators::{generate, Family, GenSpec};
use hunt_core::tree::PortTree;

pub fn tree(family: Family) -> PortTree {
    generate(&GenSpec::seeded(family, 17)).expect("benchmark parameters are in range")
}
