//! The C6-saturated family `G_t^eps` on `n = 3t + eps` vertices.
//!
//! Vertex numbering is fixed: `x1 x2 y1 y2 y3 y4 a0 b0 c0`, then
//! `a_i b_i c_i` for `i = 1..=t-3`, then the extra vertices `z1` (and `z2`).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{CyclePath, Graph};
use crate::saturation::check_saturated;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction needs n >= 9, got {0}")]
    TooSmall(usize),
    #[error("construction needs n <= 64, got {0}")]
    TooLarge(usize),
}

const X1: usize = 0;
const X2: usize = 1;
const Y1: usize = 2;
const Y2: usize = 3;
const Y3: usize = 4;
const Y4: usize = 5;
const A0: usize = 6;
const B0: usize = 7;
const C0: usize = 8;

const G0_LABELS: [&str; 9] = ["x1", "x2", "y1", "y2", "y3", "y4", "a0", "b0", "c0"];

const G0_EDGES: [(usize, usize); 12] = [
    (X1, X2),
    (X1, Y1),
    (X1, Y2),
    (X1, A0),
    (X2, Y3),
    (X2, Y4),
    (X2, C0),
    (Y1, Y2),
    (Y2, Y3),
    (Y2, Y4),
    (A0, B0),
    (B0, C0),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub n: usize,
    pub t: usize,
    pub epsilon: usize,
    pub labels: BTreeMap<String, usize>,
}

impl ConstructionSpec {
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    fn v(&self, label: &str) -> usize {
        self.vertex(label)
            .unwrap_or_else(|| panic!("no vertex labelled {label}"))
    }

    /// Name of every vertex, indexed by vertex id.
    pub fn names(&self) -> Vec<String> {
        let mut names = vec![String::new(); self.n];
        for (name, &v) in &self.labels {
            names[v] = name.clone();
        }
        names
    }
}

fn g0_unchecked() -> Graph {
    Graph::from_edges(9, &G0_EDGES)
}

/// Checks every listed witness cycle of `G0` and its saturation
/// certificate; panics when the encoded edge set disagrees with them.
fn validate_g0(g: &Graph) {
    let report = check_saturated(g, 6);
    assert!(
        report.is_saturated() && report.recheck(g),
        "G0 edge set failed saturation: {:?}",
        report.verdict
    );
    // the three-edge arcs y4-x2-y3-y2 and y4-y2-x1-x2 must both exist
    for path in [[Y4, X2, Y3, Y2], [Y4, Y2, X1, X2], [Y4, Y2, Y1, X1]] {
        assert!(CyclePath::path(path.to_vec()).validate(g), "missing arc {path:?}");
    }
    assert!(CyclePath::path(vec![A0, X1, Y2, Y3, X2, C0]).validate(g));
}

pub fn build_g0() -> Graph {
    static CHECKED: OnceLock<()> = OnceLock::new();
    let g = g0_unchecked();
    CHECKED.get_or_init(|| validate_g0(&g));
    g
}

/// `(4n - eps)/3 + C(eps, 2)` with `eps = n mod 3`.
pub fn upper_bound_edges(n: usize) -> Result<usize, ConstructionError> {
    if n < 9 {
        return Err(ConstructionError::TooSmall(n));
    }
    let eps = n % 3;
    Ok((4 * n - eps) / 3 + eps * eps.saturating_sub(1) / 2)
}

/// Smallest integer at least `4n/3 - 2`.
pub fn lower_bound_edges(n: usize) -> usize {
    (4 * n).div_ceil(3).saturating_sub(2)
}

pub fn build_construction(n: usize) -> Result<(Graph, ConstructionSpec), ConstructionError> {
    if n < 9 {
        return Err(ConstructionError::TooSmall(n));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let t = n / 3;
    let epsilon = n % 3;
    let base = build_g0();
    let mut g = Graph::new(n);
    for (u, v) in base.edges() {
        g.add_edge(u, v);
    }
    let mut labels: BTreeMap<String, usize> = G0_LABELS
        .iter()
        .enumerate()
        .map(|(i, l)| (l.to_string(), i))
        .collect();
    for i in 1..=t - 3 {
        let a = 9 + 3 * (i - 1);
        let (b, c) = (a + 1, a + 2);
        g.add_edge(a, b);
        g.add_edge(b, c);
        g.add_edge(X1, a);
        g.add_edge(X2, c);
        labels.insert(format!("a{i}"), a);
        labels.insert(format!("b{i}"), b);
        labels.insert(format!("c{i}"), c);
    }
    for j in 0..epsilon {
        let z = 3 * t + j;
        g.add_edge(Y4, z);
        labels.insert(format!("z{}", j + 1), z);
    }
    if epsilon == 2 {
        g.add_edge(3 * t, 3 * t + 1);
    }
    Ok((
        g,
        ConstructionSpec {
            n,
            t,
            epsilon,
            labels,
        },
    ))
}

/// The explicit 6-cycles certifying the non-edges between the attached
/// paths and those incident to `z1`. Each entry is `(non-edge, cycle)`.
pub fn listed_witnesses(spec: &ConstructionSpec) -> Vec<((usize, usize), CyclePath)> {
    let mut out = Vec::new();
    let v = |s: &str| spec.v(s);
    let (x1, x2) = (v("x1"), v("x2"));
    let (y2, y3) = (v("y2"), v("y3"));
    for i in 0..=spec.t - 3 {
        for j in i + 1..=spec.t - 3 {
            let (ai, bi, ci) = (v(&format!("a{i}")), v(&format!("b{i}")), v(&format!("c{i}")));
            let (aj, bj, cj) = (v(&format!("a{j}")), v(&format!("b{j}")), v(&format!("c{j}")));
            out.push(((ai, aj), CyclePath::cycle(vec![ai, bi, ci, x2, x1, aj])));
            out.push(((ai, bj), CyclePath::cycle(vec![ai, bi, ci, x2, cj, bj])));
            out.push(((ai, cj), CyclePath::cycle(vec![ai, x1, y2, y3, x2, cj])));
            out.push(((bi, bj), CyclePath::cycle(vec![bi, ai, x1, x2, cj, bj])));
            out.push(((bi, cj), CyclePath::cycle(vec![bi, ai, x1, aj, bj, cj])));
            out.push(((ci, cj), CyclePath::cycle(vec![ci, bi, ai, x1, x2, cj])));
        }
    }
    if let Some(z1) = spec.vertex("z1") {
        let (y1, y4) = (v("y1"), v("y4"));
        let (a0, b0, c0) = (v("a0"), v("b0"), v("c0"));
        let arc_one = [y4, x2, y3, y2];
        let arc_one_alt = [y4, y2, x1, x2];
        for (w, arc) in [(x1, arc_one), (y1, arc_one), (c0, arc_one_alt), (y3, arc_one_alt)] {
            let mut c = vec![z1];
            c.extend(arc);
            c.push(w);
            out.push(((z1.min(w), z1.max(w)), CyclePath::cycle(c)));
        }
        for w in [x2, a0] {
            out.push(((z1.min(w), z1.max(w)), CyclePath::cycle(vec![z1, y4, y2, y1, x1, w])));
        }
        for (w, common) in [(y2, y1), (b0, a0)] {
            out.push(((z1.min(w), z1.max(w)), CyclePath::cycle(vec![z1, y4, x2, x1, common, w])));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRow {
    pub n: usize,
    pub epsilon: usize,
    pub edges: usize,
    pub bound: usize,
    pub lower: usize,
    pub saturated: bool,
}

impl ConstructionRow {
    pub fn passed(&self) -> bool {
        self.edges == self.bound && self.saturated && self.edges >= self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub rows: Vec<ConstructionRow>,
}

impl ConstructionReport {
    pub fn failures(&self) -> Vec<&ConstructionRow> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(ConstructionRow::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("n\teps\tedges\tbound\tsaturated\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.n,
                r.epsilon,
                r.edges,
                r.bound,
                if r.saturated { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// Builds and certifies the construction for every `n` in the range.
pub fn verify_construction(
    range: std::ops::RangeInclusive<usize>,
) -> Result<ConstructionReport, ConstructionError> {
    let ns: Vec<usize> = range.collect();
    let rows = ns
        .par_iter()
        .map(|&n| {
            let (g, spec) = build_construction(n)?;
            let bound = upper_bound_edges(n)?;
            let report = check_saturated(&g, 6);
            Ok(ConstructionRow {
                n,
                epsilon: spec.epsilon,
                edges: g.edge_count(),
                bound,
                lower: lower_bound_edges(n),
                saturated: report.is_saturated() && report.recheck(&g),
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(ConstructionReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g0_shape() {
        let g = build_g0();
        assert_eq!(g.order(), 9);
        assert_eq!(g.edge_count(), 12);
        assert!(check_saturated(&g, 6).is_saturated());
        assert!(g.has_edge(Y4, X2) && g.has_edge(Y4, Y2));
    }

    #[test]
    fn bounds() {
        assert_eq!(upper_bound_edges(9), Ok(12));
        assert_eq!(upper_bound_edges(10), Ok(13));
        assert_eq!(upper_bound_edges(11), Ok(15));
        assert_eq!(upper_bound_edges(12), Ok(16));
        assert_eq!(upper_bound_edges(8), Err(ConstructionError::TooSmall(8)));
        assert_eq!(lower_bound_edges(9), 10);
        assert_eq!(lower_bound_edges(10), 12);
        assert_eq!(lower_bound_edges(11), 13);
        assert_eq!(lower_bound_edges(12), 14);
    }

    #[test]
    fn small_constructions() {
        let (g9, s9) = build_construction(9).unwrap();
        assert_eq!(g9, build_g0());
        assert_eq!(s9.t, 3);
        assert_eq!(build_construction(10).unwrap().0.edge_count(), 13);
        assert_eq!(build_construction(11).unwrap().0.edge_count(), 15);
        assert_eq!(build_construction(8), Err(ConstructionError::TooSmall(8)));
    }

    #[test]
    fn labels_are_bijective() {
        for n in 9..=20 {
            let (_, spec) = build_construction(n).unwrap();
            let mut ids: Vec<usize> = spec.labels.values().copied().collect();
            ids.sort();
            assert_eq!(ids, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn minimum_degree_and_good_roots() {
        let (g, spec) = build_construction(15).unwrap();
        assert_eq!(g.min_degree(), 2);
        let good = crate::saturation::good_roots(&g);
        for i in 0..=2 {
            assert!(good.contains(spec.v(&format!("b{i}"))));
        }
    }
}
