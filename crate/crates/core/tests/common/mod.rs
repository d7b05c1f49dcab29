//! Independent oracles and the shared audit corpus for integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use satforge::construction::build_construction;
use satforge::search::{LevelSweep, SearchBudget};
use satforge::{Charge, Graph};

/// Adjacency matrix copy, so the oracles share no code with the library.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

fn extend(adj: &[Vec<bool>], start: usize, k: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let last = *path.last().unwrap();
    if path.len() == k {
        return adj[last][start];
    }
    for w in start + 1..adj.len() {
        if adj[last][w] && !used[w] {
            used[w] = true;
            path.push(w);
            let hit = extend(adj, start, k, path, used);
            path.pop();
            used[w] = false;
            if hit {
                return true;
            }
        }
    }
    false
}

/// Whether the graph has a cycle on exactly `k` vertices, by walking every
/// simple path that starts at the cycle's smallest vertex.
pub fn naive_has_cycle(adj: &[Vec<bool>], k: usize) -> bool {
    let n = adj.len();
    let mut used = vec![false; n];
    (0..n).any(|s| {
        used[s] = true;
        let hit = extend(adj, s, k, &mut vec![s], &mut used);
        used[s] = false;
        hit
    })
}

/// Saturation straight from the definition: no `C_k`, and adding any
/// missing edge creates one.
pub fn naive_saturated(g: &Graph, k: usize) -> bool {
    let mut adj = matrix(g);
    if naive_has_cycle(&adj, k) {
        return false;
    }
    let n = adj.len();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] {
                continue;
            }
            adj[u][v] = true;
            adj[v][u] = true;
            let made = naive_has_cycle(&adj, k);
            adj[u][v] = false;
            adj[v][u] = false;
            if !made {
                return false;
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest upper-triangle bit string over all relabellings.
pub fn brute_canonical(g: &Graph) -> u64 {
    let adj = matrix(g);
    let n = adj.len();
    permutations(n)
        .iter()
        .map(|p| {
            let mut bits = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    bits = bits << 1 | adj[p[i]][p[j]] as u64;
                }
            }
            bits
        })
        .max()
        .unwrap_or(0)
}

/// Every labelled graph on `n` vertices.
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges)
    })
}

/// BFS distances from `root`, computed without the library.
pub fn distances(g: &Graph, root: usize) -> Vec<Option<usize>> {
    let adj = matrix(g);
    let mut dist = vec![None; adj.len()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in 0..adj.len() {
            if adj[u][w] && dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Level of each vertex when the root's closed neighbourhood is level 1.
pub fn levels(g: &Graph, root: usize) -> Vec<usize> {
    distances(g, root)
        .into_iter()
        .map(|d| d.expect("connected").max(1))
        .collect()
}

/// Initial charge from its definition: half of each same-level neighbour,
/// all of each neighbour one level closer, minus 4/3.
pub fn initial_charges(g: &Graph, root: usize) -> Vec<Charge> {
    let lv = levels(g, root);
    let adj = matrix(g);
    (0..g.order())
        .map(|x| {
            let mut c = Charge::new(-4, 3);
            for y in 0..g.order() {
                if adj[x][y] && lv[y] == lv[x] {
                    c += &Charge::new(1, 2);
                } else if adj[x][y] && lv[y] + 1 == lv[x] && lv[x] >= 2 {
                    c += &Charge::int(1);
                }
            }
            c
        })
        .collect()
}

/// Every C6-saturated graph on `lo..=hi` vertices up to isomorphism.
pub fn all_c6_saturated(lo: usize, hi: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in lo..=hi {
        let mut sweep = LevelSweep::new(n, 6, SearchBudget::unlimited()).unwrap();
        loop {
            out.extend(sweep.saturated());
            if !sweep.advance().unwrap() {
                break;
            }
        }
    }
    out
}

/// The audit corpus: every C6-saturated graph on up to nine vertices (which
/// includes the order-9 extremals) plus the sparse construction for orders
/// 9 to 20.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = all_c6_saturated(1, 9)
        .into_iter()
        .map(|g| (satforge::to_graph6(&g), g))
        .collect();
    for n in 9..=20 {
        let (g, _) = build_construction(n).unwrap();
        out.push((format!("construction n={n}"), g));
    }
    out
}
