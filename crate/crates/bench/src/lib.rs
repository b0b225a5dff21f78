//! Shared fixtures for the solver benchmarks.

use iuc_core::gen::{gen_composite, gen_er, CompositeSpec};
use iuc_core::Graph;

/// The ER(60, 0.2) instance used across the solve benches.
pub fn er60(seed: u64) -> Graph {
    gen_er(60, 0.2, seed).expect("valid probability")
}

/// Small composite instance, still inside the oracle's range.
pub fn composite_small(seed: u64) -> Graph {
    let spec = CompositeSpec {
        principal_count: 5,
        size_mean: 7.0,
        seed,
        ..CompositeSpec::default()
    };
    gen_composite(&spec).expect("valid spec").0
}

pub fn er_oracle_sized(seed: u64) -> Graph {
    gen_er(22, 0.3, seed).expect("valid probability")
}
