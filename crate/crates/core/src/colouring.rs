//! Colourings, the colouring file format and the vertex/path predicates used
//! when reasoning about `(Δ+1)`-colourings.
//!
//! Colours are `1..=k`; "the top colour" always means `Δ+1` for the graph at
//! hand. Predicates other than [`is_proper`] assume the colouring has one
//! entry per vertex and panic otherwise.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Colour = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("vertex {vertex} has colour {colour}, outside 1..={k}")]
    ColourOutOfRange { vertex: Vertex, colour: Colour, k: Colour },
    #[error("colouring has {found} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("line {line}: malformed colouring line {content:?}")]
    Malformed { line: usize, content: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Colouring {
    k: Colour,
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(k: Colour, colours: Vec<Colour>) -> Result<Self, ColouringError> {
        if k == 0 {
            return Err(ColouringError::EmptyPalette);
        }
        if let Some((vertex, &colour)) = colours
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > k)
        {
            return Err(ColouringError::ColourOutOfRange { vertex, colour, k });
        }
        Ok(Colouring { k, colours })
    }

    #[inline]
    pub fn k(&self) -> Colour {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    #[inline]
    pub fn colour(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn as_slice(&self) -> &[Colour] {
        &self.colours
    }

    pub fn into_vec(self) -> Vec<Colour> {
        self.colours
    }

    /// Same assignment over a different palette.
    pub fn with_palette(&self, k: Colour) -> Result<Colouring, ColouringError> {
        Colouring::new(k, self.colours.clone())
    }

    /// Largest colour actually used (0 for the empty colouring).
    pub fn max_colour(&self) -> Colour {
        self.colours.iter().copied().max().unwrap_or(0)
    }

    pub fn count_of(&self, colour: Colour) -> usize {
        self.colours.iter().filter(|&&c| c == colour).count()
    }

    pub(crate) fn set(&mut self, v: Vertex, colour: Colour) {
        debug_assert!(colour >= 1 && colour <= self.k);
        self.colours[v] = colour;
    }

    pub(crate) fn from_raw(k: Colour, colours: Vec<Colour>) -> Colouring {
        debug_assert!(colours.iter().all(|&c| c >= 1 && c <= k));
        Colouring { k, colours }
    }

    fn check_size(&self, g: &Graph) -> Result<(), ColouringError> {
        if self.len() != g.n() {
            return Err(ColouringError::SizeMismatch {
                expected: g.n(),
                found: self.len(),
            });
        }
        Ok(())
    }

    fn assert_size(&self, g: &Graph) {
        assert_eq!(
            self.len(),
            g.n(),
            "colouring has {} entries for a graph on {} vertices",
            self.len(),
            g.n()
        );
    }
}

/// Parses the colouring file format: a line `k`, then one line of `n`
/// space-separated colours.
pub fn parse_colouring(text: &str) -> Result<Colouring, ColouringError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let k: Colour = header.trim().parse().map_err(|_| ColouringError::Malformed {
        line: 1,
        content: header.to_string(),
    })?;
    let body = lines.next().unwrap_or("");
    let colours = body
        .split_whitespace()
        .map(|t| t.parse::<Colour>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| ColouringError::Malformed {
            line: 2,
            content: body.to_string(),
        })?;
    if let Some((i, extra)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
        return Err(ColouringError::Malformed {
            line: i + 3,
            content: extra.to_string(),
        });
    }
    Colouring::new(k, colours)
}

pub fn format_colouring(c: &Colouring) -> String {
    let mut out = format!("{}\n", c.k());
    for (i, col) in c.as_slice().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{col}");
    }
    out.push('\n');
    out
}

/// True iff no edge is monochromatic.
pub fn is_proper(g: &Graph, c: &Colouring) -> Result<bool, ColouringError> {
    c.check_size(g)?;
    Ok(g.edges().all(|(u, v)| c.colour(u) != c.colour(v)))
}

/// Every vertex sees all `k - 1` colours other than its own on its
/// neighbours. Such a colouring is an isolated vertex of `R_k(G)`.
pub fn is_frozen(g: &Graph, c: &Colouring) -> bool {
    c.assert_size(g);
    let k = c.k() as usize;
    let mut seen = vec![usize::MAX; k + 1];
    g.vertices().all(|v| {
        let mut distinct = 0;
        for &w in g.neighbours(v) {
            let col = c.colour(w) as usize;
            if col != c.colour(v) as usize && seen[col] != v {
                seen[col] = v;
                distinct += 1;
            }
        }
        distinct == k - 1
    })
}

/// Number of distinct colours on the neighbours of `v`.
pub fn neighbour_colour_count(g: &Graph, c: &Colouring, v: Vertex) -> usize {
    let mut cols: Vec<Colour> = g.neighbours(v).iter().map(|&w| c.colour(w)).collect();
    cols.sort_unstable();
    cols.dedup();
    cols.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexState {
    /// `Δ` distinct colours on the neighbours.
    Locked,
    Free,
    /// Free, with the colours in `1..=Δ` missing from the closed neighbourhood.
    Superfree(Vec<Colour>),
}

impl VertexState {
    pub fn is_locked(&self) -> bool {
        matches!(self, VertexState::Locked)
    }

    pub fn is_free(&self) -> bool {
        !self.is_locked()
    }

    pub fn is_superfree(&self) -> bool {
        matches!(self, VertexState::Superfree(_))
    }
}

pub fn vertex_state(g: &Graph, c: &Colouring, v: Vertex) -> VertexState {
    c.assert_size(g);
    let delta = g.max_degree();
    if neighbour_colour_count(g, c, v) == delta {
        return VertexState::Locked;
    }
    let mut present = vec![false; delta + 1];
    for &w in g.neighbours(v).iter().chain(std::iter::once(&v)) {
        let col = c.colour(w) as usize;
        if col <= delta {
            present[col] = true;
        }
    }
    let witness: Vec<Colour> = (1..=delta)
        .filter(|&col| !present[col])
        .map(|col| col as Colour)
        .collect();
    if witness.is_empty() {
        VertexState::Free
    } else {
        VertexState::Superfree(witness)
    }
}

/// Locked flag for every vertex.
pub fn locked_vertices(g: &Graph, c: &Colouring) -> Vec<bool> {
    c.assert_size(g);
    let delta = g.max_degree();
    g.vertices()
        .map(|v| neighbour_colour_count(g, c, v) == delta)
        .collect()
}

/// Every vertex coloured `Δ+1` is locked, and so are all of its neighbours.
pub fn is_reduced_form(g: &Graph, c: &Colouring) -> bool {
    let top = g.max_degree() as Colour + 1;
    let locked = locked_vertices(g, c);
    g.vertices()
        .filter(|&v| c.colour(v) == top)
        .all(|v| locked[v] && g.neighbours(v).iter().all(|&w| locked[w]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PathClass {
    None,
    /// Endvertices locked and coloured `Δ+1`.
    NearlyLocked,
    /// Nearly locked with a free vertex, where the only locked vertices are
    /// the endvertices and their neighbours.
    Nice,
    /// Nearly locked with every vertex locked.
    FullyLocked,
}

/// Which vertices count as "neighbours of the endvertices" when deciding
/// whether a path is nice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NiceReading {
    /// The endvertices' neighbours along the path.
    #[default]
    PathNeighbours,
    /// Any neighbour of an endvertex in the graph.
    GraphNeighbours,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("path vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("vertex {0} repeats on the path")]
    RepeatedVertex(Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

pub fn classify_path(
    g: &Graph,
    c: &Colouring,
    path: &[Vertex],
) -> Result<PathClass, PathError> {
    classify_path_with(g, c, path, NiceReading::default())
}

pub fn classify_path_with(
    g: &Graph,
    c: &Colouring,
    path: &[Vertex],
    reading: NiceReading,
) -> Result<PathClass, PathError> {
    check_path(g, path)?;
    let locked = locked_vertices(g, c);
    Ok(classify_with_locked(g, c, &locked, path, reading))
}

fn check_path(g: &Graph, path: &[Vertex]) -> Result<(), PathError> {
    if path.is_empty() {
        return Err(PathError::Empty);
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if v >= g.n() {
            return Err(PathError::VertexOutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(PathError::RepeatedVertex(v));
        }
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(PathError::NotAdjacent(w[0], w[1]));
        }
    }
    Ok(())
}

/// Classification against a precomputed locked table; `path` must already be
/// a valid path with distinct vertices.
pub(crate) fn classify_with_locked(
    g: &Graph,
    c: &Colouring,
    locked: &[bool],
    path: &[Vertex],
    reading: NiceReading,
) -> PathClass {
    let top = g.max_degree() as Colour + 1;
    if path.len() < 2 {
        return PathClass::None;
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    let endpoint_ok = |v: Vertex| locked[v] && c.colour(v) == top;
    if !endpoint_ok(first) || !endpoint_ok(last) {
        return PathClass::None;
    }
    if path.iter().all(|&v| locked[v]) {
        return PathClass::FullyLocked;
    }
    let allowed = |i: usize, v: Vertex| match reading {
        NiceReading::PathNeighbours => i <= 1 || i + 2 >= path.len(),
        NiceReading::GraphNeighbours => {
            v == first || v == last || g.has_edge(v, first) || g.has_edge(v, last)
        }
    };
    let nice = path
        .iter()
        .enumerate()
        .all(|(i, &v)| !locked[v] || allowed(i, v));
    if nice {
        PathClass::Nice
    } else {
        PathClass::NearlyLocked
    }
}
