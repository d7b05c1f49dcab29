//! Exact saturation numbers by isomorph-free enumeration of `C_k`-free
//! graphs, one edge count at a time.

mod canon;
mod corpus;
mod enumerate;

use std::time::Duration;

use thiserror::Error;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, CanonicalCode, MAX_CANON_ORDER};
pub use corpus::{read_summary, result_file_name, write_result, SummaryRow, SUMMARY_FILE};
pub use enumerate::{enumerate_saturated, min_saturated_edges, search_lower_bound, LevelSweep, SearchResult};

/// Practical ceiling on the order for enumeration.
pub const MAX_SEARCH_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {0} is too large")]
    TooLarge(usize),
    #[error("cycle length must be at least 3, got {0}")]
    CycleLength(usize),
    #[error("budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Complete => "complete",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}
