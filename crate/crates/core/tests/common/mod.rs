//! Reference implementations used as oracles. Deliberately naive: they share
//! no code with the library beyond the graph and colouring containers.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use recolour_core::corpus::connected_graphs;
use recolour_core::{Colour, Graph};

/// Connected graphs on 4 to 7 vertices, up to isomorphism.
pub fn corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| (4..=7).flat_map(connected_graphs).collect())
}

/// Maximum, over nonempty vertex subsets, of the minimum degree of the
/// induced subgraph.
pub fn brute_force_degeneracy(g: &Graph) -> usize {
    brute_force_degeneracy_of(g, &g.vertices().collect::<Vec<_>>())
}

/// Degeneracy of the subgraph induced by `part`.
pub fn brute_force_degeneracy_of(g: &Graph, part: &[usize]) -> usize {
    assert!(part.len() <= 20);
    let mut best = 0;
    for mask in 1u32..(1 << part.len()) {
        let members: Vec<usize> = (0..part.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| part[i])
            .collect();
        let min_degree = members
            .iter()
            .map(|&v| members.iter().filter(|&&w| g.has_edge(v, w)).count())
            .min()
            .unwrap();
        best = best.max(min_degree);
    }
    best
}

pub fn naive_is_proper(g: &Graph, c: &[Colour]) -> bool {
    g.edges().all(|(u, v)| c[u] != c[v])
}

pub fn naive_is_frozen(g: &Graph, c: &[Colour], k: Colour) -> bool {
    g.vertices().all(|v| {
        (1..=k).all(|x| x == c[v] || g.neighbours(v).iter().any(|&w| c[w] == x))
    })
}

/// All proper colourings by counting through every vector in `{1..k}^n`.
pub fn naive_colourings(g: &Graph, k: Colour) -> Vec<Vec<Colour>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut c = vec![1; n];
    loop {
        if naive_is_proper(g, &c) {
            out.push(c.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if c[i] < k {
                c[i] += 1;
                break;
            }
            c[i] = 1;
        }
    }
}

/// Components of `R_k(G)` by hash-map BFS, each sorted, listed in order of
/// their least member.
pub fn naive_components(g: &Graph, k: Colour) -> Vec<Vec<Vec<Colour>>> {
    let all = naive_colourings(g, k);
    let index: HashMap<Vec<Colour>, usize> =
        all.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; all.len()];
    let mut comps = Vec::new();
    for root in 0..all.len() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(all[u].clone());
            for v in g.vertices() {
                for x in 1..=k {
                    let mut next = all[u].clone();
                    next[v] = x;
                    if let Some(&w) = index.get(&next) {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps.sort();
    comps
}

/// BFS distance between two colourings, `None` when unreachable.
pub fn naive_distance(g: &Graph, k: Colour, a: &[Colour], b: &[Colour]) -> Option<usize> {
    let mut dist: HashMap<Vec<Colour>, usize> = HashMap::from([(a.to_vec(), 0)]);
    let mut queue = VecDeque::from([a.to_vec()]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if u == b {
            return Some(d);
        }
        for v in g.vertices() {
            for x in 1..=k {
                let mut next = u.clone();
                next[v] = x;
                if x != u[v] && naive_is_proper(g, &next) && !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

/// Random simple graph on `n` vertices with edge probability `p`.
pub fn random_graph<R: rand::Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph on `n` vertices with maximum degree at most `cap`, built by
/// adding uniformly drawn pairs while both ends have spare degree.
pub fn random_bounded_degree_graph<R: rand::Rng>(n: usize, cap: usize, attempts: usize, rng: &mut R) -> Graph {
    let mut degree = vec![0; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..attempts {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let pair = (u.min(v), u.max(v));
        if u != v && degree[u] < cap && degree[v] < cap && !edges.contains(&pair) {
            degree[u] += 1;
            degree[v] += 1;
            edges.push(pair);
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
