//! Bitset graph kernel: adjacency rows are single `u64` words, so graphs are
//! limited to 64 vertices.

use std::fmt;

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph6: empty record")]
    Empty,
    #[error("graph6: invalid byte {0:#04x} at offset {1}")]
    InvalidByte(u8, usize),
    #[error("graph6: malformed header")]
    BadHeader,
    #[error("graph6: expected {expected} data bytes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("graph6: padding bits are not zero")]
    TrailingBits,
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} lies at distance {distance}, beyond level {max_level}")]
    LevelOverflow {
        vertex: usize,
        distance: usize,
        max_level: usize,
    },
    #[error("vertex {0} is unreachable from the root")]
    Unreachable(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

/// A set of vertices packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Bits strictly above position `u`.
#[inline]
fn above(u: usize) -> u64 {
    u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0)
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`.
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        Graph {
            n,
            adj: vec![0; n],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Star with centre 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range");
        if self.has_edge(u, v) {
            return false;
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.edges += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        self.edges -= 1;
        true
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.add_edge(u, v);
        g
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors(v);
        s.insert(v);
        s
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & above(u)).iter()
                .map(move |v| (u, v))
        })
    }

    /// Non-adjacent pairs `(u, v)` with `u < v` in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(above(u) & !self.adj[u])
                .intersection(VertexSet::full(self.n))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|v| self.neighbors(v).intersection(s).len()).sum::<usize>() / 2
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: VertexSet, b: VertexSet) -> usize {
        a.iter().map(|v| self.neighbors(v).intersection(b).len()).sum()
    }

    /// Deletes the vertices in `removed`, renumbering the survivors in
    /// increasing order. Returns the new graph and the old id of each new vertex.
    pub fn remove_vertices(&self, removed: VertexSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = self.vertices().difference(removed).iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(keep.len());
        for (u, v) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                h.add_edge(index[u], index[v]);
            }
        }
        (h, keep)
    }

    /// Graph whose vertex `i` is vertex `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::new(self.n);
        for (u, v) in self.edges() {
            h.add_edge(pos[u], pos[v]);
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::empty();
            for v in frontier {
                next = next.union(self.neighbors(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen.len() == self.n
    }

    /// Length of a shortest path between `u` and `v`, if any.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let mut seen = VertexSet::singleton(u);
        let mut frontier = seen;
        let mut d = 0;
        while !frontier.is_empty() {
            if frontier.contains(v) {
                return Some(d);
            }
            let mut next = VertexSet::empty();
            for w in frontier {
                next = next.union(self.neighbors(w));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
            d += 1;
        }
        None
    }

    #[cfg(test)]
    fn check_invariants(&self) -> bool {
        let mut deg_sum = 0;
        for u in 0..self.n {
            if self.has_edge(u, u) || !VertexSet(self.adj[u]).is_subset(self.vertices()) {
                return false;
            }
            for v in self.neighbors(u) {
                if !self.has_edge(v, u) {
                    return false;
                }
            }
            deg_sum += self.degree(u);
        }
        deg_sum == 2 * self.edges
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathKind {
    Path,
    Cycle,
}

/// An ordered vertex sequence forming a path or a cycle in some host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePath {
    pub vertices: Vec<usize>,
    pub kind: PathKind,
}

impl CyclePath {
    pub fn path(vertices: Vec<usize>) -> Self {
        CyclePath {
            vertices,
            kind: PathKind::Path,
        }
    }

    pub fn cycle(vertices: Vec<usize>) -> Self {
        CyclePath {
            vertices,
            kind: PathKind::Cycle,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == PathKind::Cycle
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        match self.kind {
            PathKind::Path => self.vertices.len().saturating_sub(1),
            PathKind::Cycle => self.vertices.len(),
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Consecutive pairs, including the closing pair for a cycle.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let vs = &self.vertices;
        let mut pairs: Vec<(usize, usize)> = vs.windows(2).map(|w| (w[0], w[1])).collect();
        if self.is_cycle() && vs.len() > 1 {
            pairs.push((vs[vs.len() - 1], vs[0]));
        }
        pairs
    }

    /// Checks distinctness and adjacency of consecutive vertices in `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        if vs.iter().any(|&v| v >= g.order()) || self.vertex_set().len() != vs.len() {
            return false;
        }
        if self.is_cycle() && vs.len() < 3 {
            return false;
        }
        self.edge_pairs().into_iter().all(|(u, v)| g.has_edge(u, v))
    }

    /// True if `u` and `v` are consecutive on this path or cycle.
    pub fn has_consecutive(&self, u: usize, v: usize) -> bool {
        self.edge_pairs()
            .into_iter()
            .any(|(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

impl fmt::Display for CyclePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn extend_paths(
    g: &Graph,
    target: usize,
    remaining: usize,
    visited: u64,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    stop_at_first: bool,
) -> bool {
    let cur = *path.last().expect("path is never empty");
    if remaining == 1 {
        if g.has_edge(cur, target) {
            path.push(target);
            out.push(path.clone());
            path.pop();
            return stop_at_first;
        }
        return false;
    }
    let candidates = g.adj[cur] & !visited & !(1u64 << target);
    for w in VertexSet(candidates) {
        path.push(w);
        let done = extend_paths(
            g,
            target,
            remaining - 1,
            visited | (1u64 << w),
            path,
            out,
            stop_at_first,
        );
        path.pop();
        if done {
            return true;
        }
    }
    false
}

fn collect_paths(
    g: &Graph,
    u: usize,
    v: usize,
    len: usize,
    avoid: VertexSet,
    stop_at_first: bool,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if u == v || len == 0 || u >= g.n || v >= g.n || len >= g.n {
        return out;
    }
    let mut path = vec![u];
    let visited = avoid.0 | (1u64 << u);
    extend_paths(g, v, len, visited, &mut path, &mut out, stop_at_first);
    out
}

/// All simple `u`–`v` paths with exactly `len` edges, in lexicographic order
/// of their vertex sequences.
pub fn paths_between(g: &Graph, u: usize, v: usize, len: usize) -> Vec<CyclePath> {
    collect_paths(g, u, v, len, VertexSet::empty(), false)
        .into_iter()
        .map(CyclePath::path)
        .collect()
}

/// Like [`paths_between`] but never visits a vertex of `avoid`.
pub fn paths_between_avoiding(
    g: &Graph,
    u: usize,
    v: usize,
    len: usize,
    avoid: VertexSet,
) -> Vec<CyclePath> {
    collect_paths(g, u, v, len, avoid, false)
        .into_iter()
        .map(CyclePath::path)
        .collect()
}

/// Lexicographically least `u`–`v` path with `len` edges.
pub fn first_path(g: &Graph, u: usize, v: usize, len: usize) -> Option<CyclePath> {
    collect_paths(g, u, v, len, VertexSet::empty(), true)
        .pop()
        .map(CyclePath::path)
}

pub fn has_path(g: &Graph, u: usize, v: usize, len: usize) -> bool {
    first_path(g, u, v, len).is_some()
}

/// Finds a cycle of length `k`, scanning edges `(u, v)` in lexicographic
/// order and looking for a `(k-1)`-path closing each one.
pub fn contains_cycle(g: &Graph, k: usize) -> Option<CyclePath> {
    if k < 3 || k > g.order() {
        return None;
    }
    for (u, v) in g.edges() {
        if let Some(p) = first_path(g, u, v, k - 1) {
            return Some(CyclePath::cycle(p.vertices));
        }
    }
    None
}

/// Distance layering from a root: level 1 is the closed neighbourhood of the
/// root, level `i >= 2` holds the vertices at distance exactly `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    root: usize,
    levels: Vec<VertexSet>,
    level_of: Vec<usize>,
}

impl LevelPartition {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of non-empty levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Vertices of level `i` (1-based); empty past the last level.
    pub fn level(&self, i: usize) -> VertexSet {
        if i == 0 {
            return VertexSet::empty();
        }
        self.levels.get(i - 1).copied().unwrap_or_default()
    }

    pub fn level_of(&self, v: usize) -> usize {
        self.level_of[v]
    }

    /// Neighbours of `x` lying in level `i`.
    pub fn nbrs_in(&self, g: &Graph, x: usize, i: usize) -> VertexSet {
        g.neighbors(x).intersection(self.level(i))
    }

    pub fn n_in(&self, g: &Graph, x: usize, i: usize) -> usize {
        self.nbrs_in(g, x, i).len()
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    /// Checks the partition and layering invariants against `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut union = VertexSet::empty();
        for (idx, &l) in self.levels.iter().enumerate() {
            if !union.intersection(l).is_empty() {
                return false;
            }
            union = union.union(l);
            let i = idx + 1;
            if i >= 2 && l.iter().any(|x| self.n_in(g, x, i - 1) == 0) {
                return false;
            }
        }
        if union != g.vertices() {
            return false;
        }
        g.edges()
            .all(|(u, v)| self.level_of[u].abs_diff(self.level_of[v]) <= 1)
    }
}

/// Breadth-first layering from `root`. Every vertex must be reachable and lie
/// at distance at most `max_level`.
pub fn bfs_levels(g: &Graph, root: usize, max_level: usize) -> Result<LevelPartition, GraphError> {
    if root >= g.order() {
        return Err(GraphError::VertexOutOfRange(root));
    }
    let mut level_of = vec![0usize; g.order()];
    let first = g.closed_neighbors(root);
    for v in first {
        level_of[v] = 1;
    }
    let mut levels = vec![first];
    let mut seen = first;
    let mut frontier = g.neighbors(root);
    loop {
        let mut next = VertexSet::empty();
        for v in frontier {
            next = next.union(g.neighbors(v));
        }
        next = next.difference(seen);
        if next.is_empty() {
            break;
        }
        let i = levels.len() + 1;
        if i > max_level {
            let vertex = next.first().expect("non-empty");
            let distance = g.distance(root, vertex).unwrap_or(i);
            return Err(GraphError::LevelOverflow {
                vertex,
                distance,
                max_level,
            });
        }
        for v in next {
            level_of[v] = i;
        }
        levels.push(next);
        seen = seen.union(next);
        frontier = next;
    }
    if let Some(v) = g.vertices().difference(seen).first() {
        return Err(GraphError::Unreachable(v));
    }
    Ok(LevelPartition {
        root,
        levels,
        level_of,
    })
}
