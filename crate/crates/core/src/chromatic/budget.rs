use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Limits for a single solver call. Running out yields an inconclusive result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl SearchBudget {
    pub const DEFAULT_MAX_NODES: u64 = 100_000_000;
    pub const DEFAULT_MAX_SECONDS: u64 = 600;

    pub fn new(max_nodes: u64, max_time: Duration) -> Self {
        SearchBudget {
            max_nodes,
            max_time,
        }
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_time: Duration::MAX,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: Self::DEFAULT_MAX_NODES,
            max_time: Duration::from_secs(Self::DEFAULT_MAX_SECONDS),
        }
    }
}

/// Counts visited nodes and prunes; reports exhaustion of a [`SearchBudget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: SearchBudget,
    started: Instant,
    pub nodes: u64,
    pub prunes: u64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Exhausted;

impl Meter {
    pub fn new(budget: SearchBudget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            nodes: 0,
            prunes: 0,
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Exhausted);
        }
        if self.nodes & 0x3ff == 0 && self.started.elapsed() > self.budget.max_time {
            return Err(Exhausted);
        }
        Ok(())
    }
}
