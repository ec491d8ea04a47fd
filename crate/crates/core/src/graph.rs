//! Simple undirected graphs and the edge-list file format.
//!
//! Vertices are `0..n`. Adjacency lists are kept sorted so that membership
//! tests are a binary search and iteration order is deterministic.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
}

/// Errors from [`parse_edge_list`]. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header \"n m\"")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge { u, v }),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edge_count += 1;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// True when every vertex has the same degree (vacuously for `n = 0`).
    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, listed by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// A graph with no vertices is not considered connected.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_count = 0;
        let adj: Vec<Vec<Vertex>> = vertices
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<Vertex> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                nbrs.sort_unstable();
                edge_count += nbrs.len();
                nbrs
            })
            .collect();
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nbrs| nbrs.len() + 1 == n)
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|nbrs| nbrs.len() == 2) && self.is_connected()
    }

    // Named families used throughout the tests and the CLI.

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// `K_n` with the edge `{n-2, n-1}` removed.
    pub fn complete_minus_edge(n: usize) -> Graph {
        assert!(n >= 2);
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&e| e != (n - 2, n - 1));
        Graph::from_edges(n, edges).expect("edges are valid")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("star edges are valid")
    }

    /// The `d`-dimensional hypercube; vertices are bit strings.
    pub fn hypercube(d: u32) -> Graph {
        let n = 1usize << d;
        let edges = (0..n).flat_map(move |u| {
            (0..d)
                .map(move |b| u ^ (1 << b))
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        });
        Graph::from_edges(n, edges).expect("hypercube edges are valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are valid")
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
            .collect::<Vec<_>>();
        Graph::from_edges(off + other.n(), edges).expect("union of valid graphs is valid")
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines `u v`.
///
/// Trailing blank lines are ignored; anything else that does not fit the
/// format is an error naming the offending line.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (n, m) = match lines.next() {
        Some((line, content)) => match parse_pair(content) {
            Some(pair) => pair,
            None if content.trim().is_empty() => return Err(ParseError::MissingHeader { line }),
            None => {
                return Err(ParseError::MalformedLine {
                    line,
                    content: content.to_string(),
                })
            }
        },
        None => return Err(ParseError::MissingHeader { line: 1 }),
    };

    let mut g = Graph::empty(n);
    let mut found = 0;
    let mut trailing_blank = false;
    for (line, content) in lines {
        if content.trim().is_empty() {
            trailing_blank = true;
            continue;
        }
        let malformed = || ParseError::MalformedLine {
            line,
            content: content.to_string(),
        };
        if trailing_blank {
            return Err(malformed());
        }
        let (u, v) = parse_pair(content).ok_or_else(malformed)?;
        g.add_edge(u, v).map_err(|e| match e {
            GraphError::VertexOutOfRange { vertex, n } => {
                ParseError::VertexOutOfRange { line, vertex, n }
            }
            GraphError::SelfLoop { vertex } => ParseError::SelfLoop { line, vertex },
            GraphError::DuplicateEdge { u, v } => ParseError::DuplicateEdge { line, u, v },
        })?;
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found });
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_complete_graph() {
        let p3 = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!((0..3).map(|v| p3.degree(v)).collect::<Vec<_>>(), vec![1, 2, 1]);

        let k4 = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert_eq!(k4, Graph::complete(4));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(
            parse_edge_list("3 2\n0 1\n0 1"),
            Err(ParseError::DuplicateEdge { line: 3, u: 0, v: 1 })
        );
        assert_eq!(
            parse_edge_list("3 2\n0 1\n1 0"),
            Err(ParseError::DuplicateEdge { line: 3, u: 1, v: 0 })
        );
        assert_eq!(
            parse_edge_list("3 1\n2 2"),
            Err(ParseError::SelfLoop { line: 2, vertex: 2 })
        );
        assert_eq!(
            parse_edge_list("3 1\n0 3"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 3 })
        );
        assert!(matches!(
            parse_edge_list("3 1\n0 x"),
            Err(ParseError::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1 2"),
            Err(ParseError::MalformedLine { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("3 2\n0 1\n"),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(parse_edge_list(""), Err(ParseError::MissingHeader { line: 1 }));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        let text = to_edge_list(&Graph::path(3));
        assert_eq!(text, "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn components_sorted_by_least_vertex() {
        assert_eq!(Graph::complete(4).connected_components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            Graph::empty(3).connected_components(),
            vec![vec![0], vec![1], vec![2]]
        );
        let g = Graph::path(3).disjoint_union(&Graph::path(2));
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn families_have_expected_shape() {
        let q3 = Graph::hypercube(3);
        assert_eq!((q3.n(), q3.edge_count(), q3.max_degree()), (8, 12, 3));
        assert!(q3.is_regular());
        let p = Graph::petersen();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!(p.is_regular() && p.max_degree() == 3);
        let k4e = Graph::complete_minus_edge(4);
        assert_eq!(k4e.edge_count(), 5);
        assert!(!k4e.has_edge(2, 3));
        assert!(Graph::cycle(5).is_cycle());
        assert!(!Graph::path(5).is_cycle());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let h = g.induced_subgraph(&[1, 2, 4]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::petersen();
        for u in g.vertices() {
            for &v in g.neighbours(u) {
                assert!(g.has_edge(v, u));
            }
        }
    }
}
