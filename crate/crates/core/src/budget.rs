use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Limits for iterating and for the exponential searches run on each iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of HL steps applied.
    pub max_iter: usize,
    /// An iterate with more vertices than this stops the sequence.
    pub max_order: usize,
    /// DFS node allowance for each individual search.
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_iter: 30,
            max_order: 512,
            search_nodes: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget of {0} nodes exhausted")]
pub struct Exhausted(pub u64);

/// Counts DFS nodes against a fixed allowance.
#[derive(Debug, Clone)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Meter::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.used += 1;
        if self.used > self.limit {
            Err(Exhausted(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
