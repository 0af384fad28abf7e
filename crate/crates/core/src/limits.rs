use serde::{Deserialize, Serialize};

/// Resource caps for every iterative procedure. Exceeding one is an error,
/// never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Limits {
    /// Reduction steps allowed per standard basis or normal form computation.
    pub max_steps: u64,
    /// Rungs of the parameter ladder `tau = 1/2, 1/4, ...` tried on a branch.
    pub tau_ladder: u32,
    /// Largest truncation order used when a branch is given as a truncated series.
    pub trunc_cap: u32,
    /// Rungs of the generic linear form ladder.
    pub generic_ladder: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_steps: 1_000_000, tau_ladder: 8, trunc_cap: 512, generic_ladder: 8 }
    }
}
