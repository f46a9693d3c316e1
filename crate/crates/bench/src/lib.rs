//! Shared fixtures for the solver benchmarks.

use chomp_core::NormalizedRule;

/// Four-player rules covering the simple classes and one non-simple rule.
pub fn four_player_rules() -> Vec<NormalizedRule> {
    ["0,1,2,3", "0,1,3,2", "0,2,1,3", "0,3,2,1"]
        .iter()
        .map(|r| r.parse().expect("fixture rule"))
        .collect()
}
