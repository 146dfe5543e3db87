//! Search budgets shared by the extremal and census solvers.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Caps on an exhaustive search. `symmetry` toggles vertex-permutation
/// pruning; it must be off when comparing against brute-force oracles so
/// that correctness is testable without it.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap: Duration,
    pub symmetry: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: 2_000_000_000,
            time_cap: Duration::from_secs(600),
            symmetry: true,
        }
    }
}

impl SearchBudget {
    pub fn new(node_cap: u64, time_cap: Duration, symmetry: bool) -> Result<Self> {
        if node_cap == 0 || time_cap.is_zero() {
            return Err(Error::input("budget caps must be positive"));
        }
        Ok(SearchBudget { node_cap, time_cap, symmetry })
    }

    /// Defaults, with `COLOREX_NODE_CAP` and `COLOREX_TIME_CAP_SECS`
    /// overriding when set.
    pub fn from_env() -> Result<Self> {
        let mut b = SearchBudget::default();
        if let Ok(v) = std::env::var("COLOREX_NODE_CAP") {
            let n: u64 = v
                .parse()
                .map_err(|_| Error::input(format!("COLOREX_NODE_CAP: invalid integer \"{v}\"")))?;
            if n == 0 {
                return Err(Error::input("COLOREX_NODE_CAP must be positive"));
            }
            b.node_cap = n;
        }
        if let Ok(v) = std::env::var("COLOREX_TIME_CAP_SECS") {
            let s: u64 = v
                .parse()
                .map_err(|_| Error::input(format!("COLOREX_TIME_CAP_SECS: invalid integer \"{v}\"")))?;
            if s == 0 {
                return Err(Error::input("COLOREX_TIME_CAP_SECS must be positive"));
            }
            b.time_cap = Duration::from_secs(s);
        }
        Ok(b)
    }

    pub fn without_symmetry(mut self) -> Self {
        self.symmetry = false;
        self
    }
}

/// Running meter against a budget. Time is polled every 4096 nodes.
pub(crate) struct BudgetMeter {
    node_cap: u64,
    deadline: Instant,
    pub nodes: u64,
    exhausted: bool,
}

impl BudgetMeter {
    pub fn new(budget: &SearchBudget) -> Self {
        BudgetMeter {
            node_cap: budget.node_cap,
            deadline: Instant::now() + budget.time_cap,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Count one node; returns false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.node_cap
            || (self.nodes % 4096 == 0 && Instant::now() > self.deadline)
        {
            self.exhausted = true;
            return false;
        }
        true
    }
}
