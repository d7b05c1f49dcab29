use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::graph::{has_path, Graph};
use crate::saturation::is_saturated;

use super::canon::{canonical_labeling, CanonicalCode};
use super::{SearchBudget, SearchError, SearchStatus, MAX_SEARCH_ORDER};

/// All `C_k`-free graphs on `n` vertices up to isomorphism, one edge count
/// at a time. Level `m + 1` is built by adding every cycle-avoiding edge
/// to every level-`m` graph and keeping one graph per canonical code.
#[derive(Debug, Clone)]
pub struct LevelSweep {
    n: usize,
    k: usize,
    edges: usize,
    level: BTreeMap<CanonicalCode, Graph>,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
}

impl LevelSweep {
    pub fn new(n: usize, k: usize, budget: SearchBudget) -> Result<Self, SearchError> {
        if k < 3 {
            return Err(SearchError::CycleLength(k));
        }
        if n > MAX_SEARCH_ORDER {
            return Err(SearchError::TooLarge(n));
        }
        let empty = Graph::new(n);
        let (code, _) = canonical_labeling(&empty)?;
        Ok(LevelSweep {
            n,
            k,
            edges: 0,
            level: BTreeMap::from([(code, empty)]),
            nodes: 1,
            budget,
            started: Instant::now(),
        })
    }

    /// Edge count of the current level.
    pub fn edges(&self) -> usize {
        self.edges
    }

    /// Canonical representatives of the current level, in code order.
    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.level.values()
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    /// Canonicalizations performed so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn out_of_time(&self) -> bool {
        self.budget.max_time.is_some_and(|t| self.started.elapsed() > t)
    }

    /// Moves to the next edge count. Returns `Ok(false)` once no graph can
    /// take another edge. The node budget is checked against the whole
    /// next level before any work, so budgeted runs stop at the same place
    /// regardless of scheduling.
    pub fn advance(&mut self) -> Result<bool, SearchError> {
        let (n, k) = (self.n, self.k);
        let current: Vec<&Graph> = self.level.values().collect();
        let candidates: Vec<Graph> = current
            .par_iter()
            .flat_map_iter(|g| {
                g.non_edges()
                    // g is C_k-free, so a new C_k would have to use uv
                    .filter(move |&(u, v)| k > n || !has_path(g, u, v, k - 1))
                    .map(move |(u, v)| g.with_edge(u, v))
            })
            .collect();
        let total = self.nodes + candidates.len() as u64;
        if self.budget.max_nodes.is_some_and(|m| total > m) {
            return Err(SearchError::BudgetExhausted { nodes: self.nodes });
        }
        let stop = AtomicBool::new(false);
        let children: Vec<Option<(CanonicalCode, Graph)>> = candidates
            .par_iter()
            .map(|child| {
                if stop.load(Ordering::Relaxed) || self.out_of_time() {
                    stop.store(true, Ordering::Relaxed);
                    return None;
                }
                let (code, order) = canonical_labeling(child).expect("order checked");
                Some((code, child.permuted(&order)))
            })
            .collect();
        if stop.load(Ordering::Relaxed) {
            return Err(SearchError::BudgetExhausted { nodes: self.nodes });
        }
        self.nodes = total;
        let next: BTreeMap<CanonicalCode, Graph> = children.into_iter().flatten().collect();
        if next.is_empty() {
            return Ok(false);
        }
        self.level = next;
        self.edges += 1;
        Ok(true)
    }

    /// Saturated graphs of the current level, in code order.
    pub fn saturated(&self) -> Vec<Graph> {
        let k = self.k;
        let graphs: Vec<&Graph> = self.level.values().collect();
        graphs
            .par_iter()
            .filter(|g| is_saturated(g, k))
            .map(|g| (*g).clone())
            .collect()
    }
}

/// Outcome of a minimum-edge sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    /// Fewest edges of a saturated graph; `None` when the budget ran out
    /// first.
    pub sat_value: Option<usize>,
    /// Pairwise non-isomorphic saturated graphs with `sat_value` edges, as
    /// canonical representatives in code order.
    pub extremal: Vec<Graph>,
    /// Canonicalizations performed.
    pub explored: u64,
    /// Number of non-isomorphic `C_k`-free graphs per edge count visited.
    pub level_sizes: Vec<usize>,
    /// First edge count checked for saturation.
    pub lower_bound: usize,
    pub status: SearchStatus,
}

/// Edge count below which no `C_k`-saturated graph on `n` vertices can
/// exist, from unconditional bounds only: `ceil(7n/6) - 2` for `k = 6`,
/// `n >= 9`; otherwise zero.
pub fn search_lower_bound(n: usize, k: usize) -> usize {
    if k == 6 && n >= 9 {
        (7 * n).div_ceil(6) - 2
    } else {
        0
    }
}

/// Smallest edge count of a `C_k`-saturated graph on `n` vertices, with all
/// extremal graphs up to isomorphism.
pub fn min_saturated_edges(n: usize, k: usize, budget: SearchBudget) -> Result<SearchResult, SearchError> {
    let mut sweep = LevelSweep::new(n, k, budget)?;
    let lower_bound = search_lower_bound(n, k);
    let mut level_sizes = vec![sweep.len()];
    let result = |sweep: &LevelSweep, sizes: Vec<usize>, sat: Option<usize>, extremal, status| SearchResult {
        n,
        k,
        sat_value: sat,
        extremal,
        explored: sweep.nodes(),
        level_sizes: sizes,
        lower_bound,
        status,
    };
    loop {
        if sweep.edges() >= lower_bound {
            let hits = sweep.saturated();
            if !hits.is_empty() {
                return Ok(result(&sweep, level_sizes, Some(sweep.edges()), hits, SearchStatus::Complete));
            }
        }
        match sweep.advance() {
            Ok(true) => level_sizes.push(sweep.len()),
            // every maximal C_k-free graph is saturated, so the top level hits
            Ok(false) => unreachable!("top level of the sweep contains saturated graphs"),
            Err(SearchError::BudgetExhausted { .. }) => {
                return Ok(result(&sweep, level_sizes, None, Vec::new(), SearchStatus::BudgetExhausted));
            }
            Err(e) => return Err(e),
        }
    }
}

/// All `C_k`-saturated graphs on `n` vertices with exactly `m` edges, up to
/// isomorphism.
pub fn enumerate_saturated(n: usize, k: usize, m: usize, budget: SearchBudget) -> Result<Vec<Graph>, SearchError> {
    if n > 10 {
        return Err(SearchError::TooLarge(n));
    }
    let mut sweep = LevelSweep::new(n, k, budget)?;
    while sweep.edges() < m {
        if !sweep.advance()? {
            return Ok(Vec::new());
        }
    }
    Ok(sweep.saturated())
}
