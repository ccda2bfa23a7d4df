//! Search limits shared by the semi-decision procedures.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Rewrite applications explored by the equality search.
    pub rewrites: usize,
    /// Sampled homomorphisms used for falsification.
    pub samples: usize,
    pub seed: u64,
    /// Maximum links in a preorder chain.
    pub chain_depth: usize,
    /// Largest multiplier degree tried by the commutative preorder oracle.
    pub t_budget: u32,
    /// Largest `m` tried by the condition (b) search.
    pub m_max: u32,
    /// Allow the cross-multiplication tier on commutative instances.
    pub commutative_oracle: bool,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            rewrites: 10_000,
            samples: 32,
            seed: DEFAULT_SEED,
            chain_depth: 12,
            t_budget: 4,
            m_max: 32,
            commutative_oracle: true,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Budget::default()
        }
    }
}
