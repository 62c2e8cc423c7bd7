//! Size caps guarding the exponential parts of the crate.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest ground set for enumeration and orderings (Bell(12) = 4,213,597).
    pub max_n: usize,
    /// Largest ground set for the connectivity-number determinant leg.
    pub max_alpha_n: usize,
    /// Largest ground set for which the dense Bareiss leg runs.
    pub max_direct_n: usize,
    /// Largest ground set for which dense `B` and `BᵗA` are materialized.
    pub max_dense_n: usize,
    /// Edge cap for deletion–contraction.
    pub max_reliability_edges: usize,
    /// Edge cap for brute-force pathset enumeration (2^E subsets).
    pub max_pathset_edges: usize,
    /// Largest complete graph for leading-term extraction.
    pub max_complete: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 12,
            max_alpha_n: 10,
            max_direct_n: 7,
            max_dense_n: 5,
            max_reliability_edges: 40,
            max_pathset_edges: 24,
            max_complete: 8,
        }
    }
}
