//! Constructive recolouring: Kempe swaps through a scratch colour, removal of
//! the top colour along a degeneracy ordering, and paths between colourings
//! of graphs whose degeneracy is below their maximum degree.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{is_proper, Colour, Colouring};
use crate::degeneracy::{
    augment_to_maximal_independent, degeneracy_ordering, degenerate_partition,
    DegeneracyOrdering,
};
use crate::graph::{Graph, Vertex};
use crate::sequence::{RecolouringSequence, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("colouring has {found} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },
    #[error("input colouring is not proper")]
    ImproperInput,
    #[error("expected palette size {expected}, found {found}")]
    PaletteMismatch { expected: Colour, found: Colour },
    #[error("degeneracy {degeneracy} is not below the maximum degree {max_degree}")]
    DegeneracyTooHigh { degeneracy: usize, max_degree: usize },
    #[error("vertex {vertex} has colour {colour}, above the maximum degree")]
    NotDeltaColouring { vertex: Vertex, colour: Colour },
    #[error("graph is regular")]
    GraphIsRegular,
    #[error("graph is disconnected")]
    GraphDisconnected,
    #[error("maximum degree {max_degree} is below 3")]
    MaxDegreeTooSmall { max_degree: usize },
    #[error("scratch colour blocked at vertex {vertex}")]
    ScratchColourInUse { vertex: Vertex },
    #[error("vertex set is not a maximal connected two-coloured component")]
    ComponentNotMaximal,
    #[error("swap colours {i}, {j} and scratch {scratch} must be distinct colours of the palette")]
    InvalidSwapColours { i: Colour, j: Colour, scratch: Colour },
}

fn check_colouring(g: &Graph, c: &Colouring) -> Result<(), EngineError> {
    match is_proper(g, c) {
        Ok(true) => Ok(()),
        Ok(false) => Err(EngineError::ImproperInput),
        Err(_) => Err(EngineError::SizeMismatch {
            expected: g.n(),
            found: c.len(),
        }),
    }
}

fn check_degeneracy(g: &Graph) -> Result<DegeneracyOrdering, EngineError> {
    let ordering = degeneracy_ordering(g);
    let max_degree = g.max_degree();
    if ordering.degeneracy() + 1 > max_degree {
        return Err(EngineError::DegeneracyTooHigh {
            degeneracy: ordering.degeneracy(),
            max_degree,
        });
    }
    Ok(ordering)
}

// ---------------------------------------------------------------------------
// Kempe swaps

/// A maximal connected component of the subgraph induced by colours `i`
/// and `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeComponent {
    i: Colour,
    j: Colour,
    vertices: Vec<Vertex>,
}

impl KempeComponent {
    /// The `{c(anchor), j}` component containing `anchor`.
    pub fn around(g: &Graph, c: &Colouring, anchor: Vertex, j: Colour) -> KempeComponent {
        let i = c.colour(anchor);
        assert_ne!(i, j, "a Kempe component needs two distinct colours");
        KempeComponent {
            i,
            j,
            vertices: two_colour_component(g, c, anchor, i, j),
        }
    }

    /// A component given explicitly; validated when swapped.
    pub fn from_parts(i: Colour, j: Colour, mut vertices: Vec<Vertex>) -> KempeComponent {
        vertices.sort_unstable();
        KempeComponent { i, j, vertices }
    }

    pub fn colours(&self) -> (Colour, Colour) {
        (self.i, self.j)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }
}

fn two_colour_component(
    g: &Graph,
    c: &Colouring,
    anchor: Vertex,
    i: Colour,
    j: Colour,
) -> Vec<Vertex> {
    let in_pair = |v: Vertex| c.colour(v) == i || c.colour(v) == j;
    if !in_pair(anchor) {
        return Vec::new();
    }
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([anchor]);
    seen[anchor] = true;
    let mut out = Vec::new();
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for &w in g.neighbours(u) {
            if !seen[w] && in_pair(w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exchanges colours `i` and `j` on `comp` in three phases: `j` vertices
/// move to `scratch`, `i` vertices move to `j`, then the scratch vertices
/// move to `i`. Produces `2·#j + #i` steps.
pub fn kempe_swap_via_scratch(
    g: &Graph,
    c: &Colouring,
    comp: &KempeComponent,
    scratch: Colour,
) -> Result<RecolouringSequence, EngineError> {
    check_colouring(g, c)?;
    let (i, j) = comp.colours();
    if i == j || scratch == i || scratch == j || [i, j, scratch].iter().any(|&x| x == 0 || x > c.k())
    {
        return Err(EngineError::InvalidSwapColours { i, j, scratch });
    }
    let Some(&first) = comp.vertices.first() else {
        return Ok(RecolouringSequence::new());
    };
    if comp.vertices.iter().any(|&v| v >= g.n())
        || two_colour_component(g, c, first, i, j) != comp.vertices
    {
        return Err(EngineError::ComponentNotMaximal);
    }
    let (j_side, i_side): (Vec<Vertex>, Vec<Vertex>) =
        comp.vertices.iter().partition(|&&v| c.colour(v) == j);
    for &v in &j_side {
        if g.neighbours(v).iter().any(|&w| c.colour(w) == scratch) {
            return Err(EngineError::ScratchColourInUse { vertex: v });
        }
    }
    let steps = j_side
        .iter()
        .map(|&v| Step::new(v, scratch))
        .chain(i_side.iter().map(|&v| Step::new(v, j)))
        .chain(j_side.iter().map(|&v| Step::new(v, i)))
        .collect();
    Ok(steps)
}

/// [`kempe_swap_via_scratch`] with scratch colour `Δ+1`.
pub fn kempe_swap(
    g: &Graph,
    c: &Colouring,
    comp: &KempeComponent,
) -> Result<RecolouringSequence, EngineError> {
    kempe_swap_via_scratch(g, c, comp, g.max_degree() as Colour + 1)
}

// ---------------------------------------------------------------------------
// Removing the top colour

/// One round of top-colour removal: the walk `(w_1, c_1), …, (w_s, c_s)`
/// starting at the earliest top-coloured vertex, applied from `w_s` back to
/// `w_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationPlan {
    pub pairs: Vec<(Vertex, Colour)>,
    /// Position in the degeneracy ordering of the vertex the walk starts at.
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub sequence: RecolouringSequence,
    pub colouring: Colouring,
    pub rounds: Vec<EliminationPlan>,
}

/// Working state for top-colour removal: the colouring plus, per vertex,
/// how many neighbours carry each colour.
struct Eliminator<'a> {
    g: &'a Graph,
    ordering: &'a DegeneracyOrdering,
    latest_neighbour: Vec<Option<Vertex>>,
    top: Colour,
    colours: Vec<Colour>,
    counts: Vec<u32>,
}

impl<'a> Eliminator<'a> {
    fn new(g: &'a Graph, ordering: &'a DegeneracyOrdering, top: Colour, colours: Vec<Colour>) -> Self {
        let width = top as usize + 1;
        let mut counts = vec![0u32; g.n() * width];
        for v in g.vertices() {
            for &w in g.neighbours(v) {
                counts[v * width + colours[w] as usize] += 1;
            }
        }
        let latest_neighbour = g
            .vertices()
            .map(|v| g.neighbours(v).iter().copied().max_by_key(|&w| ordering.position(w)))
            .collect();
        Eliminator {
            g,
            ordering,
            latest_neighbour,
            top,
            colours,
            counts,
        }
    }

    fn free_colour(&self, v: Vertex) -> Option<Colour> {
        let width = self.top as usize + 1;
        let own = self.colours[v];
        (1..=self.top).find(|&c| c != own && self.counts[v * width + c as usize] == 0)
    }

    fn recolour(&mut self, v: Vertex, colour: Colour) {
        let width = self.top as usize + 1;
        let old = self.colours[v] as usize;
        for &w in self.g.neighbours(v) {
            self.counts[w * width + old] -= 1;
            self.counts[w * width + colour as usize] += 1;
        }
        self.colours[v] = colour;
    }

    fn plan(&self, h: usize) -> EliminationPlan {
        let mut pairs = Vec::new();
        let mut w = self.ordering.order()[h];
        loop {
            if let Some(c) = self.free_colour(w) {
                pairs.push((w, c));
                return EliminationPlan { pairs, h };
            }
            // The whole palette is on the closed neighbourhood, so w has
            // more neighbours than the degeneracy allows before it.
            let next = self.latest_neighbour[w].expect("a blocked vertex has neighbours");
            assert!(
                self.ordering.position(next) > self.ordering.position(w),
                "walk must move later in the degeneracy ordering"
            );
            pairs.push((w, self.colours[next]));
            w = next;
        }
    }

    fn run(&mut self, rounds: &mut Vec<EliminationPlan>) -> Vec<Step> {
        let order = self.ordering.order();
        let mut steps = Vec::new();
        let mut from = 0;
        while let Some(h) = (from..order.len()).find(|&p| self.colours[order[p]] == self.top) {
            let plan = self.plan(h);
            for &(w, c) in plan.pairs.iter().rev() {
                debug_assert!(self.g.neighbours(w).iter().all(|&x| self.colours[x] != c));
                self.recolour(w, c);
                steps.push(Step::new(w, c));
            }
            rounds.push(plan);
            from = h + 1;
        }
        steps
    }
}

/// Removes colour `top` from `colours`, where `G` has maximum degree below
/// `top` and degeneracy below `top - 1`. Returns the steps and the new
/// colours, which lie in `1..top`.
fn eliminate_in_palette(
    g: &Graph,
    ordering: &DegeneracyOrdering,
    colours: &[Colour],
    top: Colour,
    rounds: &mut Vec<EliminationPlan>,
) -> (Vec<Step>, Vec<Colour>) {
    let mut e = Eliminator::new(g, ordering, top, colours.to_vec());
    let steps = e.run(rounds);
    (steps, e.colours)
}

/// Recolours a `(Δ+1)`-colouring of a graph with degeneracy at most `Δ-1`
/// into a `Δ`-colouring using at most `n²` steps, each vertex at most `n`
/// times.
pub fn eliminate_top_colour(g: &Graph, c: &Colouring) -> Result<Elimination, EngineError> {
    check_colouring(g, c)?;
    let top = g.max_degree() as Colour + 1;
    if c.k() != top {
        return Err(EngineError::PaletteMismatch {
            expected: top,
            found: c.k(),
        });
    }
    let ordering = check_degeneracy(g)?;
    let mut rounds = Vec::new();
    let (steps, colours) = eliminate_in_palette(g, &ordering, c.as_slice(), top, &mut rounds);
    Ok(Elimination {
        sequence: steps.into(),
        colouring: Colouring::from_raw(top, colours),
        rounds,
    })
}

// ---------------------------------------------------------------------------
// Paths between Δ-colourings

/// What one level of the recursion did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub depth: usize,
    /// Colours available at this level are `1..=palette`; `palette` is the
    /// scratch colour.
    pub palette: Colour,
    pub vertices: usize,
    pub independent_part: usize,
    pub scratch_steps: usize,
    pub elimination_steps: usize,
    pub total_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPath {
    pub sequence: RecolouringSequence,
    pub levels: Vec<LevelTrace>,
}

fn reverse_steps(start: &[Colour], steps: &[Step]) -> Vec<Step> {
    let mut current = start.to_vec();
    let mut back = Vec::with_capacity(steps.len());
    for s in steps {
        back.push(Step::new(s.vertex, current[s.vertex]));
        current[s.vertex] = s.colour;
    }
    back.reverse();
    back
}

/// Steps (in local vertex numbering) from `from` to `to`, both using colours
/// `1..=d`, that stay inside palette `1..=d+1`. `g` has maximum degree at
/// most `d` and degeneracy at most `d - 1`.
fn delta_path(
    g: &Graph,
    d: Colour,
    from: &[Colour],
    to: &[Colour],
    depth: usize,
    levels: &mut Vec<LevelTrace>,
) -> Vec<Step> {
    debug_assert!(g.max_degree() <= d as usize);
    if from == to {
        return Vec::new();
    }
    if d <= 1 {
        // Degeneracy 0 and a single colour: every colouring is the same.
        unreachable!("distinct colourings cannot exist with a single colour");
    }
    if d == 2 {
        let steps = two_colour_level(g, from, to);
        levels.push(LevelTrace {
            depth,
            palette: 3,
            vertices: g.n(),
            independent_part: 0,
            scratch_steps: steps.len(),
            elimination_steps: 0,
            total_steps: steps.len(),
        });
        return steps;
    }

    let scratch = d + 1;
    let partition = degenerate_partition(g, d as usize - 1, &[0, d as usize - 2])
        .expect("degeneracy was checked against d - 1");
    let partition =
        augment_to_maximal_independent(g, &partition).expect("first part is independent");
    let independent = &partition.parts()[0];
    let rest = &partition.parts()[1];

    let h = g.induced_subgraph(rest);
    debug_assert!(h.max_degree() < d as usize);
    let h_ordering = degeneracy_ordering(&h);
    debug_assert!(h_ordering.degeneracy() + 2 <= d as usize || h.n() == 0);
    let h_from: Vec<Colour> = rest.iter().map(|&v| from[v]).collect();
    let h_to: Vec<Colour> = rest.iter().map(|&v| to[v]).collect();

    let mut rounds = Vec::new();
    let (e_from, reduced_from) = eliminate_in_palette(&h, &h_ordering, &h_from, d, &mut rounds);
    let (e_to, reduced_to) = eliminate_in_palette(&h, &h_ordering, &h_to, d, &mut rounds);
    let level_index = levels.len();
    levels.push(LevelTrace {
        depth,
        palette: scratch,
        vertices: g.n(),
        independent_part: independent.len(),
        scratch_steps: 2 * independent.len(),
        elimination_steps: e_from.len() + e_to.len(),
        total_steps: 0,
    });
    let middle = delta_path(&h, d - 1, &reduced_from, &reduced_to, depth + 1, levels);
    let back = reverse_steps(&h_to, &e_to);

    // Nothing inside H may touch the scratch colour: the independent part
    // sits on it.
    debug_assert!(e_from
        .iter()
        .chain(&middle)
        .chain(&back)
        .all(|s| s.colour <= d));

    let mut steps: Vec<Step> = independent.iter().map(|&v| Step::new(v, scratch)).collect();
    steps.extend(
        e_from
            .iter()
            .chain(&middle)
            .chain(&back)
            .map(|s| Step::new(rest[s.vertex], s.colour)),
    );
    steps.extend(independent.iter().rev().map(|&v| Step::new(v, to[v])));
    levels[level_index].total_steps = steps.len();
    steps
}

/// Palette 3 on a forest of paths with two 2-colourings: each component
/// where they differ is swapped wholesale through colour 3.
fn two_colour_level(g: &Graph, from: &[Colour], to: &[Colour]) -> Vec<Step> {
    let mut current = Colouring::from_raw(3, from.to_vec());
    let mut steps = Vec::new();
    for comp in g.connected_components() {
        if comp.iter().all(|&v| current.colour(v) == to[v]) {
            continue;
        }
        let anchor = comp[0];
        let other = 3 - current.colour(anchor);
        let kc = KempeComponent::around(g, &current, anchor, other);
        debug_assert_eq!(kc.vertices(), comp.as_slice());
        let swap = kempe_swap_via_scratch(g, &current, &kc, 3)
            .expect("a whole two-coloured component swaps through an unused colour");
        for s in swap.steps() {
            current.set(s.vertex, s.colour);
            steps.push(*s);
        }
        debug_assert!(comp.iter().all(|&v| current.colour(v) == to[v]));
    }
    steps
}

/// Path inside `R_{Δ+1}(G)` between two colourings using only `1..=Δ`, for
/// `G` of degeneracy at most `Δ - 1`.
pub fn path_between_delta_colourings(
    g: &Graph,
    c1: &Colouring,
    c2: &Colouring,
) -> Result<DeltaPath, EngineError> {
    check_colouring(g, c1)?;
    check_colouring(g, c2)?;
    let delta = g.max_degree() as Colour;
    for c in [c1, c2] {
        if let Some(v) = g.vertices().find(|&v| c.colour(v) > delta) {
            return Err(EngineError::NotDeltaColouring {
                vertex: v,
                colour: c.colour(v),
            });
        }
    }
    check_degeneracy(g)?;
    let mut levels = Vec::new();
    let steps = delta_path(g, delta, c1.as_slice(), c2.as_slice(), 0, &mut levels);
    Ok(DeltaPath {
        sequence: steps.into(),
        levels,
    })
}

/// A full path between two `(Δ+1)`-colourings of a connected non-regular
/// graph: remove the top colour from both ends, join the two results, and
/// walk the second removal backwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonRegularPath {
    pub sequence: RecolouringSequence,
    pub forward_steps: usize,
    pub middle_steps: usize,
    pub backward_steps: usize,
    pub elimination_rounds: (usize, usize),
    pub levels: Vec<LevelTrace>,
}

pub fn find_path_non_regular(
    g: &Graph,
    a: &Colouring,
    b: &Colouring,
) -> Result<NonRegularPath, EngineError> {
    if !g.is_connected() {
        return Err(EngineError::GraphDisconnected);
    }
    if g.is_regular() {
        return Err(EngineError::GraphIsRegular);
    }
    let max_degree = g.max_degree();
    if max_degree < 3 {
        return Err(EngineError::MaxDegreeTooSmall { max_degree });
    }
    let top = max_degree as Colour + 1;
    for c in [a, b] {
        check_colouring(g, c)?;
        if c.k() != top {
            return Err(EngineError::PaletteMismatch {
                expected: top,
                found: c.k(),
            });
        }
    }
    if a == b {
        return Ok(NonRegularPath {
            sequence: RecolouringSequence::new(),
            forward_steps: 0,
            middle_steps: 0,
            backward_steps: 0,
            elimination_rounds: (0, 0),
            levels: Vec::new(),
        });
    }
    let from_a = eliminate_top_colour(g, a)?;
    let from_b = eliminate_top_colour(g, b)?;
    let middle = path_between_delta_colourings(g, &from_a.colouring, &from_b.colouring)?;
    let back = reverse_steps(b.as_slice(), from_b.sequence.steps());

    let forward_steps = from_a.sequence.len();
    let middle_steps = middle.sequence.len();
    let backward_steps = back.len();
    let mut sequence = from_a.sequence;
    sequence.extend(middle.sequence);
    sequence.extend(back.into());
    Ok(NonRegularPath {
        sequence,
        forward_steps,
        middle_steps,
        backward_steps,
        elimination_rounds: (from_a.rounds.len(), from_b.rounds.len()),
        levels: middle.levels,
    })
}
