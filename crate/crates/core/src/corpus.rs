//! Small-graph corpus: every graph up to isomorphism on a handful of
//! vertices, plus seeded random colourings.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::colouring::{Colour, Colouring};
use crate::graph::{Graph, Vertex};

/// Largest vertex count whose adjacency code fits in a `u64`.
pub const MAX_CORPUS_N: usize = 11;

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

/// Adjacency code of `g` read through `order` (position -> vertex).
fn code_under(g: &Graph, order: &[Vertex]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                code |= 1 << (63 - pair_bit(n, i, j));
            }
        }
    }
    code
}

/// Canonical labelling: the vertex order maximising the adjacency code among
/// orders that list vertices by a refinement-invariant class key.
pub fn canonical_order(g: &Graph) -> (u64, Vec<Vertex>) {
    assert!(g.n() <= MAX_CORPUS_N, "canonical form limited to {MAX_CORPUS_N} vertices");
    let key = |v: Vertex| {
        let mut nd: Vec<usize> = g.neighbours(v).iter().map(|&w| g.degree(w)).collect();
        nd.sort_unstable_by(|a, b| b.cmp(a));
        (std::cmp::Reverse(g.degree(v)), nd.into_iter().map(std::cmp::Reverse).collect::<Vec<_>>())
    };
    let mut vertices: Vec<Vertex> = g.vertices().collect();
    vertices.sort_by_key(|&v| key(v));
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in vertices {
        match classes.last_mut() {
            Some(last) if key(last[0]) == key(v) => last.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let slots: Vec<usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, members)| std::iter::repeat_n(c, members.len()))
        .collect();

    fn search(
        g: &Graph,
        classes: &[Vec<Vertex>],
        slots: &[usize],
        used: &mut [bool],
        order: &mut Vec<Vertex>,
        best: &mut (u64, Vec<Vertex>),
    ) {
        if order.len() == slots.len() {
            let code = code_under(g, order);
            if code > best.0 || best.1.is_empty() {
                *best = (code, order.clone());
            }
            return;
        }
        for &v in &classes[slots[order.len()]] {
            if !used[v] {
                used[v] = true;
                order.push(v);
                search(g, classes, slots, used, order, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    let mut best = (0, Vec::new());
    let mut used = vec![false; g.n()];
    search(g, &classes, &slots, &mut used, &mut Vec::new(), &mut best);
    best
}

/// `g` relabelled so that canonical position `i` becomes vertex `i`.
pub fn canonical_form(g: &Graph) -> (u64, Graph) {
    let (code, order) = canonical_order(g);
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let edges = g.edges().map(|(u, v)| (position[u], position[v]));
    let relabelled = Graph::from_edges(g.n(), edges).expect("relabelling preserves simplicity");
    (code, relabelled)
}

/// All graphs on `n` vertices up to isomorphism, in canonical form, sorted
/// by canonical code.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    all_graphs_max_degree(n, usize::MAX)
}

/// As [`all_graphs`], restricted to maximum degree at most `cap`. Deleting a
/// vertex never raises a degree, so extending the capped graphs on `n - 1`
/// vertices reaches every capped graph on `n`.
pub fn all_graphs_max_degree(n: usize, cap: usize) -> Vec<Graph> {
    assert!(n <= MAX_CORPUS_N, "corpus limited to {MAX_CORPUS_N} vertices");
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen: HashMap<u64, Graph> = HashMap::new();
        for g in &level {
            let old = size - 1;
            for mask in 0u32..(1 << old) {
                let chosen = || (0..old).filter(move |&u| mask >> u & 1 == 1);
                if mask.count_ones() as usize > cap || chosen().any(|u| g.degree(u) >= cap) {
                    continue;
                }
                let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
                edges.extend(chosen().map(|u| (u, old)));
                let h = Graph::from_edges(size, edges).expect("extension is simple");
                let (code, canon) = canonical_form(&h);
                seen.entry(code).or_insert(canon);
            }
        }
        let mut next: Vec<(u64, Graph)> = seen.into_iter().collect();
        next.sort_by_key(|(code, _)| *code);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    level
}

/// The connected members of [`all_graphs`].
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// A uniformly ordered greedy colouring: vertices in random order, each given
/// a random colour unused by its coloured neighbours. `None` if some vertex
/// runs out of colours, which cannot happen when `k > Δ`.
pub fn random_colouring<R: Rng + ?Sized>(g: &Graph, k: Colour, rng: &mut R) -> Option<Colouring> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(rng);
    let mut colours = vec![0; g.n()];
    for v in order {
        let free: Vec<Colour> = (1..=k)
            .filter(|&c| g.neighbours(v).iter().all(|&w| colours[w] != c))
            .collect();
        colours[v] = *free.choose(rng)?;
    }
    Some(Colouring::from_raw(k, colours))
}
