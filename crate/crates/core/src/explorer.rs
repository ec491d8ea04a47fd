//! Exhaustive oracle over the reconfiguration graph `R_k(G)`.
//!
//! Every proper `k`-colouring is interned as a base-`k` integer with vertex 0
//! as the most significant digit, so numeric order is lexicographic order of
//! colour vectors. Neighbours in `R_k(G)` are generated on demand rather than
//! stored.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{
    classify_with_locked, is_frozen, is_proper, is_reduced_form, locked_vertices, Colour,
    Colouring, NiceReading, PathClass,
};
use crate::graph::{Graph, Vertex};
use crate::sequence::{RecolouringSequence, Step};

pub const DEFAULT_STATE_LIMIT: u64 = 2_000_000;

const UNREACHED: u32 = u32::MAX;
const NOT_PROPER: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("state space of {states} colour vectors exceeds the limit of {limit}")]
    StateSpaceExceedsLimit { states: u128, limit: u64 },
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("colouring does not match the graph or palette")]
    ColouringMismatch,
    #[error("colouring is not proper")]
    ImproperColouring,
}

/// `k^n`, saturating.
pub fn state_space(n: usize, k: Colour) -> u128 {
    let mut states: u128 = 1;
    for _ in 0..n {
        states = states.saturating_mul(k as u128);
    }
    states
}

fn check_limit(n: usize, k: Colour, limit: u64) -> Result<(), ExplorerError> {
    if k == 0 {
        return Err(ExplorerError::EmptyPalette);
    }
    let states = state_space(n, k);
    if states > limit as u128 {
        return Err(ExplorerError::StateSpaceExceedsLimit { states, limit });
    }
    Ok(())
}

/// All proper colourings in lexicographic order, as codes.
fn enumerate_codes(g: &Graph, k: Colour, weights: &[u64]) -> Vec<u64> {
    fn go(
        g: &Graph,
        k: Colour,
        weights: &[u64],
        v: Vertex,
        colours: &mut Vec<Colour>,
        code: u64,
        out: &mut Vec<u64>,
    ) {
        if v == g.n() {
            out.push(code);
            return;
        }
        for c in 1..=k {
            if g
                .neighbours(v)
                .iter()
                .take_while(|&&w| w < v)
                .all(|&w| colours[w] != c)
            {
                colours[v] = c;
                go(g, k, weights, v + 1, colours, code + (c as u64 - 1) * weights[v], out);
            }
        }
        colours[v] = 0;
    }
    let mut out = Vec::new();
    let mut colours = vec![0; g.n()];
    go(g, k, weights, 0, &mut colours, 0, &mut out);
    out
}

fn full_mask(k: Colour) -> u64 {
    u64::MAX >> (64 - k)
}

fn radix_weights(n: usize, k: Colour) -> Vec<u64> {
    let mut weights = vec![1u64; n];
    for v in (0..n.saturating_sub(1)).rev() {
        weights[v] = weights[v + 1] * k as u64;
    }
    weights
}

/// Every proper `k`-colouring of `g`, lexicographically ordered.
pub fn enumerate_colourings(
    g: &Graph,
    k: Colour,
    limit: u64,
) -> Result<Vec<Colouring>, ExplorerError> {
    check_limit(g.n(), k, limit)?;
    let weights = radix_weights(g.n(), k);
    Ok(enumerate_codes(g, k, &weights)
        .into_iter()
        .map(|code| Colouring::from_raw(k, decode(code, k, g.n())))
        .collect())
}

fn decode(code: u64, k: Colour, n: usize) -> Vec<Colour> {
    let mut out = vec![0; n];
    decode_into(code, k, &mut out);
    out
}

fn decode_into(mut code: u64, k: Colour, out: &mut [Colour]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % k as u64) as Colour + 1;
        code /= k as u64;
    }
}

/// The explicit reconfiguration graph.
#[derive(Debug, Clone)]
pub struct ReconfigGraph {
    g: Graph,
    k: Colour,
    weights: Vec<u64>,
    codes: Vec<u64>,
    index: Vec<u32>,
    component: Vec<u32>,
    components: Vec<Vec<u32>>,
}

impl ReconfigGraph {
    pub fn build(g: &Graph, k: Colour, limit: u64) -> Result<Self, ExplorerError> {
        check_limit(g.n(), k, limit)?;
        let weights = radix_weights(g.n(), k);
        let codes = enumerate_codes(g, k, &weights);
        let states = state_space(g.n(), k) as usize;
        let mut index = vec![NOT_PROPER; states];
        for (i, &code) in codes.iter().enumerate() {
            index[code as usize] = i as u32;
        }
        let mut r = ReconfigGraph {
            g: g.clone(),
            k,
            weights,
            codes,
            index,
            component: Vec::new(),
            components: Vec::new(),
        };
        r.label_components();
        Ok(r)
    }

    fn label_components(&mut self) {
        let n = self.codes.len();
        let mut component = vec![UNREACHED; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        let mut buf = Vec::new();
        for root in 0..n {
            if component[root] != UNREACHED {
                continue;
            }
            let id = components.len() as u32;
            component[root] = id;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u as u32);
                self.neighbours_into(u, &mut buf);
                for &w in &buf {
                    if component[w] == UNREACHED {
                        component[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        self.component = component;
        self.components = components;
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn k(&self) -> Colour {
        self.k
    }

    /// Number of proper colourings.
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn colours(&self, idx: usize) -> Vec<Colour> {
        decode(self.codes[idx], self.k, self.g.n())
    }

    pub fn colouring(&self, idx: usize) -> Colouring {
        Colouring::from_raw(self.k, self.colours(idx))
    }

    pub fn index_of(&self, c: &Colouring) -> Option<usize> {
        if c.len() != self.g.n() || c.k() != self.k {
            return None;
        }
        let code: u64 = c
            .as_slice()
            .iter()
            .zip(&self.weights)
            .map(|(&col, &w)| (col as u64 - 1) * w)
            .sum();
        match self.index[code as usize] {
            NOT_PROPER => None,
            i => Some(i as usize),
        }
    }

    /// Runs `f` on the decoded colour vector of `idx` without allocating
    /// for graphs of up to 64 vertices.
    fn with_colours<T>(&self, idx: usize, f: impl FnOnce(&[Colour]) -> T) -> T {
        let n = self.g.n();
        let mut stack = [0 as Colour; 64];
        let mut heap = Vec::new();
        let colours: &mut [Colour] = if n <= stack.len() {
            &mut stack[..n]
        } else {
            heap.resize(n, 0);
            &mut heap
        };
        decode_into(self.codes[idx], self.k, colours);
        f(colours)
    }

    /// Colourings one recolouring away from `idx`, written into `out`.
    pub fn neighbours_into(&self, idx: usize, out: &mut Vec<usize>) {
        out.clear();
        let code = self.codes[idx];
        self.with_colours(idx, |colours| {
            for v in 0..colours.len() {
                let own = colours[v];
                let base = code - (own as u64 - 1) * self.weights[v];
                let mut push = |c: Colour| {
                    let next = base + (c as u64 - 1) * self.weights[v];
                    out.push(self.index[next as usize] as usize);
                };
                if self.k <= 64 {
                    let mut free = !self.blocked(colours, v) & full_mask(self.k);
                    while free != 0 {
                        push(free.trailing_zeros() + 1);
                        free &= free - 1;
                    }
                } else {
                    for c in 1..=self.k {
                        if c != own && self.g.neighbours(v).iter().all(|&w| colours[w] != c) {
                            push(c);
                        }
                    }
                }
            }
        });
    }

    /// Bit `c - 1` set for the colour of `v` and each neighbour colour `c`.
    fn blocked(&self, colours: &[Colour], v: Vertex) -> u64 {
        let mut blocked = 1u64 << (colours[v] - 1);
        for &w in self.g.neighbours(v) {
            blocked |= 1 << (colours[w] - 1);
        }
        blocked
    }

    /// Number of vertices coloured `c` in colouring `idx`.
    pub fn count_colour(&self, idx: usize, c: Colour) -> usize {
        self.with_colours(idx, |colours| colours.iter().filter(|&&x| x == c).count())
    }

    pub fn degree(&self, idx: usize) -> usize {
        let mut buf = Vec::new();
        self.neighbours_into(idx, &mut buf);
        buf.len()
    }

    pub fn component_of(&self, idx: usize) -> usize {
        self.component[idx] as usize
    }

    /// Components as sorted colouring indices, ordered by least member.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component[a] == self.component[b]
    }

    /// Multi-source BFS distances; `None` where unreachable.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<u32>> {
        self.bfs(sources)
            .into_iter()
            .map(|d| (d != UNREACHED).then_some(d))
            .collect()
    }

    fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == UNREACHED {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        let mut buf = Vec::new();
        while let Some(u) = queue.pop_front() {
            self.neighbours_into(u, &mut buf);
            for &w in &buf {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS restricted to one component: returns (farthest member, distance).
    fn eccentricity(&self, source: usize) -> (usize, u32) {
        let dist = self.bfs(&[source]);
        let mut best = (source, 0);
        for &m in &self.components[self.component_of(source)] {
            let d = dist[m as usize];
            if d > best.1 {
                best = (m as usize, d);
            }
        }
        best
    }

    /// Exact diameter of component `comp` (BFS from every member).
    pub fn component_diameter(&self, comp: usize) -> u32 {
        self.components[comp]
            .iter()
            .map(|&m| self.eccentricity(m as usize).1)
            .max()
            .unwrap_or(0)
    }

    /// Lower bound on the diameter from a few BFS sweeps, each starting at the
    /// farthest vertex found by the previous one.
    pub fn component_diameter_lower_bound(&self, comp: usize, sweeps: usize) -> u32 {
        let mut at = self.components[comp][0] as usize;
        let mut best = 0;
        for _ in 0..sweeps.max(1) {
            let (far, d) = self.eccentricity(at);
            if d <= best && far == at {
                break;
            }
            best = best.max(d);
            at = far;
        }
        best
    }

    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if !self.same_component(a, b) {
            return None;
        }
        let mut parent = vec![UNREACHED; self.len()];
        parent[a] = a as u32;
        let mut queue = VecDeque::from([a]);
        let mut buf = Vec::new();
        while let Some(u) = queue.pop_front() {
            if u == b {
                break;
            }
            self.neighbours_into(u, &mut buf);
            for &w in &buf {
                if parent[w] == UNREACHED {
                    parent[w] = u as u32;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![b];
        let mut at = b;
        while at != a {
            at = parent[at] as usize;
            path.push(at);
        }
        path.reverse();
        Some(path)
    }

    /// Steps realising an index path.
    pub fn path_to_sequence(&self, path: &[usize]) -> RecolouringSequence {
        path.windows(2)
            .map(|w| {
                let (x, y) = (self.colours(w[0]), self.colours(w[1]));
                let v = (0..x.len()).find(|&v| x[v] != y[v]).expect("adjacent colourings differ");
                Step::new(v, y[v])
            })
            .collect()
    }

    /// Whether every vertex of colouring `idx` sees all other colours,
    /// checked on the colouring itself rather than through `R_k(G)`.
    pub fn is_frozen(&self, idx: usize) -> bool {
        if self.k > 64 {
            return is_frozen(&self.g, &self.colouring(idx));
        }
        self.with_colours(idx, |colours| {
            (0..colours.len()).all(|v| self.blocked(colours, v) == full_mask(self.k))
        })
    }

    pub fn summary(&self) -> ReconfigGraphSummary {
        let mut frozen_count = 0;
        let mut isolated_non_frozen = 0;
        let components = (0..self.components.len())
            .map(|c| {
                let size = self.components[c].len();
                if size == 1 {
                    if self.is_frozen(self.components[c][0] as usize) {
                        frozen_count += 1;
                    } else {
                        isolated_non_frozen += 1;
                    }
                }
                ComponentSummary {
                    size,
                    diameter: self.component_diameter(c) as usize,
                }
            })
            .collect();
        ReconfigGraphSummary {
            total_colourings: self.len(),
            components,
            frozen_count,
            isolated_non_frozen,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub diameter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReconfigGraphSummary {
    pub total_colourings: usize,
    pub components: Vec<ComponentSummary>,
    pub frozen_count: usize,
    pub isolated_non_frozen: usize,
}

impl ReconfigGraphSummary {
    /// Components with at least two colourings.
    pub fn nontrivial_components(&self) -> usize {
        self.components.iter().filter(|c| c.size >= 2).count()
    }
}

/// Enumerates `R_k(G)` and summarises its components with exact diameters.
pub fn build_reconfig_graph(
    g: &Graph,
    k: Colour,
    limit: u64,
) -> Result<ReconfigGraphSummary, ExplorerError> {
    Ok(ReconfigGraph::build(g, k, limit)?.summary())
}

fn locate(r: &ReconfigGraph, c: &Colouring) -> Result<usize, ExplorerError> {
    match is_proper(r.graph(), c) {
        Err(_) => return Err(ExplorerError::ColouringMismatch),
        Ok(false) => return Err(ExplorerError::ImproperColouring),
        Ok(true) => {}
    }
    r.index_of(c).ok_or(ExplorerError::ColouringMismatch)
}

/// Shortest-path distance in `R_k(G)`, `None` when in different components.
pub fn oracle_distance(
    g: &Graph,
    k: Colour,
    a: &Colouring,
    b: &Colouring,
    limit: u64,
) -> Result<Option<usize>, ExplorerError> {
    let r = ReconfigGraph::build(g, k, limit)?;
    let (ia, ib) = (locate(&r, a)?, locate(&r, b)?);
    if !r.same_component(ia, ib) {
        return Ok(None);
    }
    Ok(r.shortest_path(ia, ib).map(|p| p.len() - 1))
}

/// A shortest recolouring sequence from `a` to `b`, if one exists.
pub fn oracle_shortest_sequence(
    g: &Graph,
    k: Colour,
    a: &Colouring,
    b: &Colouring,
    limit: u64,
) -> Result<Option<RecolouringSequence>, ExplorerError> {
    let r = ReconfigGraph::build(g, k, limit)?;
    let (ia, ib) = (locate(&r, a)?, locate(&r, b)?);
    Ok(r.shortest_path(ia, ib).map(|p| r.path_to_sequence(&p)))
}

// ---------------------------------------------------------------------------
// Exhaustive checks of the structural results

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check: String,
    pub verdict: Verdict,
    pub reason: Option<String>,
    /// Colourings (or colouring pairs) the check quantified over.
    pub instances: usize,
    pub max_distance: Option<usize>,
    /// `max_distance` divided by the normalisation stated in `notes`.
    pub max_ratio: Option<f64>,
    pub counterexample: Option<Vec<Colour>>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            verdict: Verdict::Pass,
            reason: None,
            instances: 0,
            max_distance: None,
            max_ratio: None,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn skip(check: &str, reason: impl Into<String>) -> Self {
        let mut r = Self::new(check);
        r.verdict = Verdict::Skip;
        r.reason = Some(reason.into());
        r
    }

    /// Records a failure; the first one is kept as the counterexample.
    pub fn fail(&mut self, reason: impl Into<String>, counterexample: Vec<Colour>) {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Fail;
            self.reason = Some(reason.into());
            self.counterexample = Some(counterexample);
        }
    }

    pub fn record_distance(&mut self, d: usize) {
        self.max_distance = Some(self.max_distance.map_or(d, |m| m.max(d)));
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

fn top_colour(g: &Graph) -> Colour {
    g.max_degree() as Colour + 1
}

/// Whether `g` contains `K_size` as a subgraph.
pub fn has_clique(g: &Graph, size: usize) -> bool {
    fn extend(g: &Graph, clique: &mut Vec<Vertex>, candidates: &[Vertex], size: usize) -> bool {
        if clique.len() == size {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<Vertex> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            clique.push(v);
            if extend(g, clique, &next, size) {
                return true;
            }
            clique.pop();
        }
        false
    }
    let all: Vec<Vertex> = g.vertices().collect();
    extend(g, &mut Vec::new(), &all, size)
}

/// Skips the check when `skip` objects to the graph or the state space is
/// too large; otherwise builds `R_{Δ+1}(G)` and runs `check` on it.
fn run_on_top_palette(
    name: &str,
    g: &Graph,
    limit: u64,
    skip: fn(&Graph) -> Option<&'static str>,
    check: fn(&ReconfigGraph) -> VerificationReport,
) -> VerificationReport {
    if let Some(reason) = skip(g) {
        return VerificationReport::skip(name, reason);
    }
    match ReconfigGraph::build(g, top_colour(g), limit) {
        Ok(r) => check(&r),
        Err(e) => VerificationReport::skip(name, e.to_string()),
    }
}

/// Guards shared by the `_on` variants, which accept any prebuilt graph.
fn guard(
    name: &str,
    r: &ReconfigGraph,
    skip: fn(&Graph) -> Option<&'static str>,
) -> Result<VerificationReport, Box<VerificationReport>> {
    if let Some(reason) = skip(r.graph()) {
        return Err(Box::new(VerificationReport::skip(name, reason)));
    }
    if r.k() != top_colour(r.graph()) {
        return Err(Box::new(VerificationReport::skip(name, "palette is not Δ+1")));
    }
    Ok(VerificationReport::new(name))
}

const DELTA_PLUS_ONE: &str = "theorem-delta-plus-one";

fn delta_plus_one_skip(g: &Graph) -> Option<&'static str> {
    if !g.is_connected() {
        Some("graph is not connected")
    } else if g.max_degree() == 0 || g.is_complete() {
        Some("graph is complete")
    } else if g.is_cycle() && g.n() % 2 == 1 {
        Some("graph is an odd cycle")
    } else {
        None
    }
}

/// Every non-frozen `(Δ+1)`-colouring reaches some `Δ`-colouring, for
/// connected graphs other than `K_{Δ+1}` and odd cycles. Ratio is
/// distance over `n²`.
pub fn verify_theorem_delta_plus_one(g: &Graph, limit: u64) -> VerificationReport {
    run_on_top_palette(DELTA_PLUS_ONE, g, limit, delta_plus_one_skip, theorem_delta_plus_one_on)
}

pub fn theorem_delta_plus_one_on(r: &ReconfigGraph) -> VerificationReport {
    let mut report = match guard(DELTA_PLUS_ONE, r, delta_plus_one_skip) {
        Ok(report) => report,
        Err(skipped) => return *skipped,
    };
    let top = r.k();
    let sources: Vec<usize> = (0..r.len()).filter(|&i| r.count_colour(i, top) == 0).collect();
    let dist = r.bfs(&sources);
    for (i, &d) in dist.iter().enumerate() {
        if r.is_frozen(i) {
            continue;
        }
        report.instances += 1;
        match d {
            UNREACHED => report.fail("no Δ-colouring reachable", r.colours(i)),
            d => report.record_distance(d as usize),
        }
    }
    let n = r.graph().n();
    report.max_ratio = report.max_distance.map(|d| d as f64 / (n * n) as f64);
    report.notes.push("ratio: distance / n^2".into());
    report
}

const MAIN: &str = "theorem-main";

fn main_skip(g: &Graph) -> Option<&'static str> {
    if !g.is_connected() {
        Some("graph is not connected")
    } else if g.max_degree() < 3 {
        Some("maximum degree below 3")
    } else {
        None
    }
}

/// How [`theorem_main_on`] measures the non-trivial component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterPolicy {
    Skip,
    /// Exact up to this many colourings, a lower bound from a few BFS sweeps
    /// beyond.
    ExactUpTo(usize),
}

pub const DEFAULT_DIAMETER_POLICY: DiameterPolicy = DiameterPolicy::ExactUpTo(5_000);

/// `R_{Δ+1}(G)` has isolated vertices exactly at the frozen colourings and at
/// most one larger component.
pub fn verify_theorem_main(g: &Graph, limit: u64) -> VerificationReport {
    run_on_top_palette(MAIN, g, limit, main_skip, |r| theorem_main_on(r, DEFAULT_DIAMETER_POLICY))
}

/// As [`verify_theorem_main`], on a prebuilt `R_{Δ+1}(G)`.
pub fn theorem_main_on(r: &ReconfigGraph, diameter: DiameterPolicy) -> VerificationReport {
    let mut report = match guard(MAIN, r, main_skip) {
        Ok(report) => report,
        Err(skipped) => return *skipped,
    };
    report.instances = r.len();
    let mut frozen = 0;
    for (c, members) in r.components().iter().enumerate() {
        for &m in members {
            let isolated = members.len() == 1;
            let is_frozen = r.is_frozen(m as usize);
            frozen += usize::from(is_frozen);
            if isolated != is_frozen {
                report.fail(
                    format!("component {c}: isolated = {isolated} but frozen = {is_frozen}"),
                    r.colours(m as usize),
                );
            }
        }
    }
    let big: Vec<usize> = (0..r.components().len())
        .filter(|&c| r.components()[c].len() >= 2)
        .collect();
    if big.len() > 1 {
        let witness = r.colours(r.components()[big[1]][0] as usize);
        report.fail(format!("{} components of size at least 2", big.len()), witness);
    }
    if let (Some(&c), DiameterPolicy::ExactUpTo(cap)) = (big.first(), diameter) {
        let size = r.components()[c].len();
        let d = if size <= cap {
            r.component_diameter(c)
        } else {
            report
                .notes
                .push(format!("diameter is a lower bound (component of {size})"));
            r.component_diameter_lower_bound(c, 4)
        };
        report.record_distance(d as usize);
        let n = r.graph().n();
        report.max_ratio = Some(d as f64 / (n * n) as f64);
    }
    report.notes.push(format!("frozen colourings: {frozen}"));
    report.notes.push("ratio: diameter / n^2".into());
    report
}

const SINGLE_TOP: &str = "lemma-single-top-vertex";

fn single_top_skip(g: &Graph) -> Option<&'static str> {
    if let Some(reason) = main_skip(g) {
        Some(reason)
    } else if has_clique(g, g.max_degree() + 1) {
        Some("graph contains K_{Δ+1}")
    } else {
        None
    }
}

/// With exactly one vertex on the top colour and no `K_{Δ+1}` subgraph, a
/// `Δ`-colouring is reachable. Ratio is distance over `n`.
pub fn verify_lemma_cubic1(g: &Graph, limit: u64) -> VerificationReport {
    run_on_top_palette(SINGLE_TOP, g, limit, single_top_skip, lemma_cubic1_on)
}

pub fn lemma_cubic1_on(r: &ReconfigGraph) -> VerificationReport {
    let mut report = match guard(SINGLE_TOP, r, single_top_skip) {
        Ok(report) => report,
        Err(skipped) => return *skipped,
    };
    let counts = top_counts(r);
    let sources: Vec<usize> = (0..r.len()).filter(|&i| counts[i] == 0).collect();
    let dist = r.bfs(&sources);
    for i in (0..r.len()).filter(|&i| counts[i] == 1) {
        report.instances += 1;
        match dist[i] {
            UNREACHED => report.fail("no Δ-colouring reachable", r.colours(i)),
            d => report.record_distance(d as usize),
        }
    }
    report.max_ratio = report.max_distance.map(|d| d as f64 / r.graph().n() as f64);
    report.notes.push("ratio: distance / n".into());
    report
}

fn top_counts(r: &ReconfigGraph) -> Vec<usize> {
    (0..r.len()).map(|i| r.count_colour(i, r.k())).collect()
}

/// Simple paths between two distinct locked top-coloured vertices, visited
/// through `visit` (return `true` to stop).
fn for_each_top_path(
    g: &Graph,
    c: &Colouring,
    locked: &[bool],
    through: impl Fn(Vertex) -> bool,
    mut visit: impl FnMut(&[Vertex]) -> bool,
) {
    let top = top_colour(g);
    let is_end = |v: Vertex| locked[v] && c.colour(v) == top;
    fn dfs(
        g: &Graph,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        is_end: &dyn Fn(Vertex) -> bool,
        through: &dyn Fn(Vertex) -> bool,
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        for &w in g.neighbours(last) {
            if on_path[w] {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            let stop = (is_end(w) && visit(path))
                || (through(w) && dfs(g, path, on_path, is_end, through, visit));
            on_path[w] = false;
            path.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    for s in g.vertices().filter(|&v| is_end(v)) {
        let mut path = vec![s];
        on_path[s] = true;
        let stop = dfs(g, &mut path, &mut on_path, &is_end, &through, &mut visit);
        on_path[s] = false;
        if stop {
            return;
        }
    }
}

/// Whether some path is nice under `reading`.
pub fn has_nice_path(g: &Graph, c: &Colouring, reading: NiceReading) -> bool {
    let locked = locked_vertices(g, c);
    let mut found = false;
    for_each_top_path(
        g,
        c,
        &locked,
        |_| true,
        |p| {
            found = classify_with_locked(g, c, &locked, p, reading) == PathClass::Nice;
            found
        },
    );
    found
}

const LOCKED_PATHS: &str = "lemma-locked-path-length-three";

/// In reduced form, each endvertex of a locked path also ends a locked path
/// with three edges.
pub fn verify_lemma_first(g: &Graph, limit: u64) -> VerificationReport {
    match enumerate_colourings(g, top_colour(g), limit) {
        Ok(colourings) => lemma_first_over(g, colourings.iter()),
        Err(e) => VerificationReport::skip(LOCKED_PATHS, e.to_string()),
    }
}

pub fn lemma_first_on(r: &ReconfigGraph) -> VerificationReport {
    if r.k() != top_colour(r.graph()) {
        return VerificationReport::skip(LOCKED_PATHS, "palette is not Δ+1");
    }
    let colourings: Vec<Colouring> = (0..r.len()).map(|i| r.colouring(i)).collect();
    lemma_first_over(r.graph(), colourings.iter())
}

fn lemma_first_over<'c>(
    g: &Graph,
    colourings: impl Iterator<Item = &'c Colouring>,
) -> VerificationReport {
    let mut report = VerificationReport::new(LOCKED_PATHS);
    for c in colourings.filter(|c| is_reduced_form(g, c)) {
        let locked = locked_vertices(g, c);
        let mut endpoints = vec![false; g.n()];
        for_each_top_path(g, c, &locked, |v| locked[v], |p| {
            endpoints[p[0]] = true;
            endpoints[p[p.len() - 1]] = true;
            false
        });
        if !endpoints.contains(&true) {
            continue;
        }
        report.instances += 1;
        for u in g.vertices().filter(|&u| endpoints[u]) {
            if !ends_locked_path_of_length_three(g, c, &locked, u) {
                report.fail(
                    format!("vertex {u} ends no locked path of length 3"),
                    c.as_slice().to_vec(),
                );
            }
        }
    }
    report
}

fn ends_locked_path_of_length_three(g: &Graph, c: &Colouring, locked: &[bool], u: Vertex) -> bool {
    let top = top_colour(g);
    g.neighbours(u).iter().filter(|&&a| locked[a]).any(|&a| {
        g.neighbours(a)
            .iter()
            .filter(|&&b| b != u && locked[b])
            .any(|&b| {
                g.neighbours(b)
                    .iter()
                    .any(|&w| w != u && w != a && locked[w] && c.colour(w) == top)
            })
    })
}

const FEWER_TOP: &str = "lemma-fewer-top-vertices";

/// Non-frozen reduced-form colourings with at least two top-coloured
/// vertices reach a colouring with fewer of them. Ratio is the worst
/// shortest such distance over `n`.
pub fn verify_lemma_cubic2(g: &Graph, limit: u64) -> VerificationReport {
    run_on_top_palette(FEWER_TOP, g, limit, main_skip, lemma_cubic2_on)
}

pub fn lemma_cubic2_on(r: &ReconfigGraph) -> VerificationReport {
    let mut report = match guard(FEWER_TOP, r, main_skip) {
        Ok(report) => report,
        Err(skipped) => return *skipped,
    };
    let g = r.graph();
    let counts = top_counts(r);
    let qualifying: Vec<usize> = (0..r.len())
        .filter(|&i| counts[i] >= 2)
        .filter(|&i| {
            let c = r.colouring(i);
            is_reduced_form(g, &c) && !is_frozen(g, &c)
        })
        .collect();
    let mut levels: Vec<usize> = qualifying.iter().map(|&i| counts[i]).collect();
    levels.sort_unstable();
    levels.dedup();
    for t in levels {
        let sources: Vec<usize> = (0..r.len()).filter(|&i| counts[i] < t).collect();
        let dist = r.bfs(&sources);
        for &i in qualifying.iter().filter(|&&i| counts[i] == t) {
            match dist[i] {
                UNREACHED => report.fail("top colour count cannot be reduced", r.colours(i)),
                d => report.record_distance(d as usize),
            }
        }
    }
    report.instances = qualifying.len();
    report.max_ratio = report.max_distance.map(|d| d as f64 / g.n() as f64);
    report.notes.push("ratio: distance / n".into());
    for reading in [NiceReading::PathNeighbours, NiceReading::GraphNeighbours] {
        let with_nice = qualifying
            .iter()
            .filter(|&&i| has_nice_path(g, &r.colouring(i), reading))
            .count();
        report
            .notes
            .push(format!("qualifying colourings with a nice path ({reading:?}): {with_nice}"));
    }
    report
}
