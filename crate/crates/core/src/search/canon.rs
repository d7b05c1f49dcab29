//! Canonical labelling by colour refinement with individualization and
//! automorphism pruning.

use std::fmt;

use crate::graph::Graph;
use crate::graph6::to_graph6;

use super::SearchError;

/// Largest order whose upper triangle fits in the 128-bit code.
pub const MAX_CANON_ORDER: usize = 16;

/// Isomorphism-invariant code: the upper triangle of the canonically
/// relabelled adjacency matrix, row by row, first pair most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n);
        let total = n * n.saturating_sub(1) / 2;
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if (self.bits >> (total - 1 - idx)) & 1 == 1 {
                    g.add_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }
}

/// Renders as the graph6 record of the canonical representative.
impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(&self.to_graph()))
    }
}

fn code_of(g: &Graph, order: &[usize]) -> u128 {
    let mut bits = 0u128;
    for i in 0..order.len() {
        let row = g.neighbors(order[i]);
        for &b in &order[i + 1..] {
            bits = (bits << 1) | row.contains(b) as u128;
        }
    }
    bits
}

type Partition = Vec<Vec<usize>>;

fn mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbour counts into other cells until stable. New
/// cells are ordered by increasing count, which keeps the result
/// independent of vertex labels.
fn refine(g: &Graph, mut p: Partition) -> Partition {
    'restart: loop {
        for s in 0..p.len() {
            let w = mask(&p[s]);
            for c in 0..p.len() {
                if p[c].len() == 1 {
                    continue;
                }
                let count = |v: usize| (g.neighbors(v).0 & w).count_ones();
                let first = count(p[c][0]);
                if p[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = p[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut groups: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        groups.push(Vec::new());
                        last = Some(k);
                    }
                    groups.last_mut().expect("just pushed").push(v);
                }
                p.splice(c..=c, groups);
                continue 'restart;
            }
        }
        return p;
    }
}

struct Canonizer<'a> {
    g: &'a Graph,
    first: Option<(u128, Vec<usize>)>,
    best: Option<(u128, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Canonizer<'_> {
    /// Whether `u` and `v` share an orbit under the automorphisms found so
    /// far that fix every vertex of `prefix`.
    fn same_orbit(&self, u: usize, v: usize, prefix: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.automorphisms {
            if prefix.iter().any(|&x| a[x] != x) {
                continue;
            }
            for (x, &y) in a.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, u) == find(&mut parent, v)
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut a = vec![0; from.len()];
        for (&x, &y) in from.iter().zip(to) {
            a[x] = y;
        }
        if a.iter().enumerate().any(|(x, &y)| x != y) {
            self.automorphisms.push(a);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let code = code_of(self.g, &order);
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            self.first = Some((code, order.clone()));
            self.best = Some((code, order));
            return;
        };
        let best_code = best.0;
        let matched = if code == best_code {
            Some(best.1.clone())
        } else if code == first.0 {
            Some(first.1.clone())
        } else {
            None
        };
        if let Some(other) = matched {
            self.record_automorphism(&other, &order);
        } else if code > best_code {
            self.best = Some((code, order));
        }
    }

    fn search(&mut self, p: Partition, prefix: &mut Vec<usize>) {
        let p = refine(self.g, p);
        let Some(ci) = p.iter().position(|c| c.len() > 1) else {
            self.leaf(p.iter().map(|c| c[0]).collect());
            return;
        };
        let mut cell = p[ci].clone();
        cell.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.same_orbit(u, v, prefix)) {
                continue;
            }
            tried.push(v);
            let mut q = p.clone();
            q[ci].retain(|&x| x != v);
            q.insert(ci, vec![v]);
            prefix.push(v);
            self.search(q, prefix);
            prefix.pop();
        }
    }
}

/// Canonical code plus the labelling that produces it: canonical vertex
/// `i` is original vertex `order[i]`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalCode, Vec<usize>), SearchError> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(SearchError::TooLarge(n));
    }
    if n == 0 {
        return Ok((CanonicalCode { n: 0, bits: 0 }, Vec::new()));
    }
    let mut c = Canonizer {
        g,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    c.search(vec![(0..n).collect()], &mut Vec::new());
    let (bits, order) = c.best.expect("at least one leaf");
    Ok((CanonicalCode { n: n as u8, bits }, order))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode, SearchError> {
    canonical_labeling(g).map(|(c, _)| c)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, SearchError> {
    Ok(a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a)? == canonical_form(b)?)
}
