//! Decision procedures for `k`-colour path and empirical type
//! classification of single instances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{is_frozen, is_proper, Colour, Colouring};
use crate::explorer::{
    enumerate_colourings, state_space, ExplorerError, ReconfigGraph, ReconfigGraphSummary,
};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("colouring {0} is not proper")]
    ImproperColouring(Side),
    #[error("colouring {side} uses palette {found}, expected {expected}")]
    PaletteMismatch {
        side: Side,
        expected: Colour,
        found: Colour,
    },
    #[error("colouring {side} has {found} vertices, graph has {expected}")]
    SizeMismatch {
        side: Side,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Explorer(#[from] ExplorerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::A => "a",
            Side::B => "b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Inconclusive,
}

/// Ordered from least to most informative; a "yes" over several components
/// reports the most informative reason among them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Reason {
    TrivialYes,
    BothNonFrozen,
    FrozenEqual,
    FrozenDistinct,
    CycleWinding,
    OracleResult,
    LimitExceeded,
}

/// A component on which one of the colourings is frozen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenWitness {
    pub side: Side,
    pub component: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecision {
    pub answer: Answer,
    pub reason: Reason,
    pub witnesses: Vec<FrozenWitness>,
    /// Winding numbers of `a` and `b` when a cycle decided the answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windings: Option<(i64, i64)>,
}

impl PathDecision {
    fn new(answer: Answer, reason: Reason) -> Self {
        PathDecision {
            answer,
            reason,
            witnesses: Vec::new(),
            windings: None,
        }
    }
}

fn check_input(g: &Graph, k: Colour, c: &Colouring, side: Side) -> Result<(), ClassifierError> {
    if c.len() != g.n() {
        return Err(ClassifierError::SizeMismatch {
            side,
            expected: g.n(),
            found: c.len(),
        });
    }
    if c.k() != k {
        return Err(ClassifierError::PaletteMismatch {
            side,
            expected: k,
            found: c.k(),
        });
    }
    if !is_proper(g, c).unwrap_or(false) {
        return Err(ClassifierError::ImproperColouring(side));
    }
    Ok(())
}

/// Winding number of a colouring around a cycle, with the vertices listed in
/// traversal order: each edge contributes `+1` or `-1` according to the
/// cyclic difference of its colours modulo 3, and the total is divided by 3.
pub fn cycle_winding(cycle: &[Vertex], c: &Colouring) -> i64 {
    let total: i64 = (0..cycle.len())
        .map(|i| {
            let (u, w) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            match (c.colour(w) as i64 - c.colour(u) as i64).rem_euclid(3) {
                1 => 1,
                2 => -1,
                _ => 0,
            }
        })
        .sum();
    total / 3
}

/// Vertices of a connected 2-regular graph in traversal order.
fn cycle_order(g: &Graph) -> Vec<Vertex> {
    let mut order = vec![0];
    let mut prev = 0;
    let mut at = g.neighbours(0)[0];
    while at != 0 {
        order.push(at);
        let next = g.neighbours(at).iter().copied().find(|&w| w != prev).unwrap();
        prev = at;
        at = next;
    }
    order
}

/// Caches reconfiguration graphs of components that fall to the oracle, so
/// repeated queries on one graph enumerate once.
pub struct PathDecider<'g> {
    g: &'g Graph,
    k: Colour,
    limit: u64,
    components: Vec<ComponentCase>,
}

struct ComponentCase {
    vertices: Vec<Vertex>,
    sub: Graph,
    oracle: Option<OracleCache>,
}

enum OracleCache {
    Unbuilt,
    Exceeded,
    Built(Box<ReconfigGraph>),
}

impl<'g> PathDecider<'g> {
    pub fn new(g: &'g Graph, k: Colour, limit: u64) -> Self {
        let components = g
            .connected_components()
            .into_iter()
            .map(|vertices| {
                let sub = g.induced_subgraph(&vertices);
                ComponentCase {
                    vertices,
                    sub,
                    oracle: None,
                }
            })
            .collect();
        PathDecider {
            g,
            k,
            limit,
            components,
        }
    }

    pub fn decide(&mut self, a: &Colouring, b: &Colouring) -> Result<PathDecision, ClassifierError> {
        check_input(self.g, self.k, a, Side::A)?;
        check_input(self.g, self.k, b, Side::B)?;
        let mut decisions = Vec::with_capacity(self.components.len());
        for i in 0..self.components.len() {
            decisions.push(self.decide_component(i, a, b)?);
        }
        Ok(combine(decisions))
    }

    fn decide_component(
        &mut self,
        i: usize,
        a: &Colouring,
        b: &Colouring,
    ) -> Result<PathDecision, ClassifierError> {
        let k = self.k;
        let limit = self.limit;
        let case = &mut self.components[i];
        let restrict = |c: &Colouring| {
            Colouring::from_raw(k, case.vertices.iter().map(|&v| c.colour(v)).collect())
        };
        let (ca, cb) = (restrict(a), restrict(b));
        let sub = &case.sub;
        let delta = sub.max_degree() as Colour;
        if k == 1 || delta + 2 <= k {
            return Ok(PathDecision::new(Answer::Yes, Reason::TrivialYes));
        }
        let frozen_regime = (k == 2 && delta >= 1) || (k >= 4 && delta + 1 == k);
        let cycle_regime = k == 3 && delta == 2;
        if frozen_regime || cycle_regime {
            let frozen = [(Side::A, is_frozen(sub, &ca)), (Side::B, is_frozen(sub, &cb))];
            if frozen.iter().any(|f| f.1) {
                let equal = ca == cb;
                let mut d = if equal {
                    PathDecision::new(Answer::Yes, Reason::FrozenEqual)
                } else {
                    PathDecision::new(Answer::No, Reason::FrozenDistinct)
                };
                d.witnesses = frozen
                    .iter()
                    .filter(|f| f.1)
                    .map(|&(side, _)| FrozenWitness {
                        side,
                        component: case.vertices.clone(),
                    })
                    .collect();
                return Ok(d);
            }
            if frozen_regime || !sub.is_cycle() {
                return Ok(PathDecision::new(Answer::Yes, Reason::BothNonFrozen));
            }
            let order = cycle_order(sub);
            let (wa, wb) = (cycle_winding(&order, &ca), cycle_winding(&order, &cb));
            let answer = if wa == wb { Answer::Yes } else { Answer::No };
            let mut d = PathDecision::new(answer, Reason::CycleWinding);
            d.windings = Some((wa, wb));
            return Ok(d);
        }
        let oracle = case.oracle.get_or_insert(OracleCache::Unbuilt);
        if let OracleCache::Unbuilt = oracle {
            *oracle = match state_space(sub.n(), k) <= limit as u128 {
                true => OracleCache::Built(Box::new(ReconfigGraph::build(sub, k, limit)?)),
                false => OracleCache::Exceeded,
            };
        }
        match oracle {
            OracleCache::Built(r) => {
                let ia = r.index_of(&ca).expect("proper colouring is enumerated");
                let ib = r.index_of(&cb).expect("proper colouring is enumerated");
                let answer = if r.same_component(ia, ib) { Answer::Yes } else { Answer::No };
                Ok(PathDecision::new(answer, Reason::OracleResult))
            }
            _ => Ok(PathDecision::new(Answer::Inconclusive, Reason::LimitExceeded)),
        }
    }
}

fn combine(decisions: Vec<PathDecision>) -> PathDecision {
    if let Some(no) = decisions.iter().find(|d| d.answer == Answer::No) {
        return no.clone();
    }
    if let Some(inc) = decisions.iter().find(|d| d.answer == Answer::Inconclusive) {
        return inc.clone();
    }
    let mut out = decisions
        .iter()
        .max_by_key(|d| d.reason)
        .cloned()
        .unwrap_or_else(|| PathDecision::new(Answer::Yes, Reason::TrivialYes));
    out.witnesses = decisions.into_iter().flat_map(|d| d.witnesses).collect();
    out
}

/// Whether `b` is reachable from `a` in `R_k(G)`.
///
/// Runs in `O(n + m)` except where the answer needs the exhaustive oracle;
/// those components are answered only when their state space fits `limit`.
pub fn decide_k_colour_path(
    g: &Graph,
    k: Colour,
    a: &Colouring,
    b: &Colouring,
    limit: u64,
) -> Result<PathDecision, ClassifierError> {
    PathDecider::new(g, k, limit).decide(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusMethod {
    /// Some vertex has fewer than `k - 1` neighbours.
    MinDegree,
    /// `Δ`-regular, `k = Δ + 1` and `Δ + 1` does not divide `n`.
    Divisibility,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrozenCensus {
    pub count: u64,
    pub witnesses: Vec<Colouring>,
    pub method: CensusMethod,
}

pub const CENSUS_WITNESSES: usize = 10;

/// Which analytic shortcut, if any, rules out frozen `k`-colourings.
pub fn frozen_shortcut(g: &Graph, k: Colour) -> Option<CensusMethod> {
    if g.n() == 0 {
        return None;
    }
    if (g.min_degree() as u64) + 1 < k as u64 {
        return Some(CensusMethod::MinDegree);
    }
    let delta = g.max_degree();
    if g.is_regular() && k as usize == delta + 1 && !g.n().is_multiple_of(delta + 1) {
        return Some(CensusMethod::Divisibility);
    }
    None
}

/// Counts frozen `k`-colourings, keeping the first few as witnesses.
pub fn frozen_census(g: &Graph, k: Colour, limit: u64) -> Result<FrozenCensus, ClassifierError> {
    if let Some(method) = frozen_shortcut(g, k) {
        return Ok(FrozenCensus {
            count: 0,
            witnesses: Vec::new(),
            method,
        });
    }
    frozen_census_by_enumeration(g, k, limit)
}

/// Census ignoring the shortcuts.
pub fn frozen_census_by_enumeration(
    g: &Graph,
    k: Colour,
    limit: u64,
) -> Result<FrozenCensus, ClassifierError> {
    let mut count = 0;
    let mut witnesses = Vec::new();
    for c in enumerate_colourings(g, k, limit)? {
        if is_frozen(g, &c) {
            count += 1;
            if witnesses.len() < CENSUS_WITNESSES {
                witnesses.push(c);
            }
        }
    }
    Ok(FrozenCensus {
        count,
        witnesses,
        method: CensusMethod::Enumeration,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmpiricalType {
    #[serde(rename = "1")]
    Type1,
    #[serde(rename = "2")]
    Type2,
    #[serde(rename = "3")]
    Type3,
    Inconclusive,
}

/// Component diameters above `DIAMETER_ENVELOPE · n²` are not treated as
/// quadratic.
pub const DIAMETER_ENVELOPE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TypeReport {
    pub graph: String,
    pub n: usize,
    pub k: Colour,
    pub max_degree: usize,
    pub empirical_type: EmpiricalType,
    /// The type of the class of connected graphs with this palette and
    /// maximum degree, where it is known (`None` for `k ≥ 4, Δ ≥ k`).
    pub class_type: Option<u8>,
    pub evidence: ReconfigGraphSummary,
    pub max_diameter: usize,
    pub max_diameter_ratio: f64,
    pub notes: Vec<String>,
}

/// Compact identifier: `n:u-v,u-v,...`.
pub fn graph_id(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}:{}", g.n(), edges.join(","))
}

/// Known type of the class of connected `k`-colourable graphs with maximum
/// degree at most `delta`.
pub fn class_type(k: Colour, delta: usize) -> Option<u8> {
    let (k, d) = (k as usize, delta);
    match () {
        _ if k == 1 && d == 0 => Some(1),
        _ if k >= 2 && d + 2 <= k => Some(1),
        _ if k == 2 => Some(2),
        _ if k >= 4 && d + 1 == k => Some(2),
        _ if k == 3 => Some(3),
        _ => None,
    }
}

/// Enumerates `R_k(G)` and reports the smallest type its structure fits.
pub fn classify_instance(g: &Graph, k: Colour, limit: u64) -> Result<TypeReport, ClassifierError> {
    let r = ReconfigGraph::build(g, k, limit)?;
    let evidence = r.summary();
    let max_diameter = evidence.components.iter().map(|c| c.diameter).max().unwrap_or(0);
    let n2 = (g.n() * g.n()).max(1) as f64;
    let ratio = max_diameter as f64 / n2;
    let mut notes = Vec::new();
    let empirical_type = if evidence.total_colourings == 0 {
        notes.push(format!("graph has no proper {k}-colouring"));
        EmpiricalType::Inconclusive
    } else if ratio > DIAMETER_ENVELOPE {
        notes.push(format!("diameter {max_diameter} exceeds {DIAMETER_ENVELOPE}·n²"));
        EmpiricalType::Inconclusive
    } else if evidence.components.len() == 1 {
        EmpiricalType::Type1
    } else if evidence.nontrivial_components() <= 1 {
        EmpiricalType::Type2
    } else {
        EmpiricalType::Type3
    };
    Ok(TypeReport {
        graph: graph_id(g),
        n: g.n(),
        k,
        max_degree: g.max_degree(),
        empirical_type,
        class_type: class_type(k, g.max_degree()),
        evidence,
        max_diameter,
        max_diameter_ratio: ratio,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::DEFAULT_STATE_LIMIT;

    fn col(k: Colour, cs: &[Colour]) -> Colouring {
        Colouring::new(k, cs.to_vec()).unwrap()
    }

    fn decide(g: &Graph, k: Colour, a: &[Colour], b: &[Colour]) -> PathDecision {
        decide_k_colour_path(g, k, &col(k, a), &col(k, b), DEFAULT_STATE_LIMIT).unwrap()
    }

    #[test]
    fn cycle_six_frozen_cases() {
        let c6 = Graph::cycle(6);
        let frozen = [1, 2, 3, 1, 2, 3];
        let d = decide(&c6, 3, &frozen, &frozen);
        assert_eq!((d.answer, d.reason), (Answer::Yes, Reason::FrozenEqual));
        let d = decide(&c6, 3, &frozen, &[1, 2, 1, 2, 1, 2]);
        assert_eq!((d.answer, d.reason), (Answer::No, Reason::FrozenDistinct));
        assert_eq!(d.witnesses[0].side, Side::A);
    }

    #[test]
    fn cube_non_frozen_pair() {
        let q3 = Graph::hypercube(3);
        let a: Vec<Colour> = (0..8).map(|v: u32| v.count_ones() % 2 + 1).collect();
        let b: Vec<Colour> = (0..8).map(|v: u32| 2 - v.count_ones() % 2).collect();
        let d = decide(&q3, 4, &a, &b);
        assert_eq!((d.answer, d.reason), (Answer::Yes, Reason::BothNonFrozen));
    }

    #[test]
    fn winding_numbers() {
        let c6 = Graph::cycle(6);
        let order = cycle_order(&c6);
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(cycle_winding(&order, &col(3, &[1, 2, 3, 1, 2, 3])), 2);
        assert_eq!(cycle_winding(&order, &col(3, &[3, 2, 1, 3, 2, 1])), -2);
        assert_eq!(cycle_winding(&order, &col(3, &[1, 2, 1, 2, 1, 2])), 0);
    }

    #[test]
    fn input_errors() {
        let p3 = Graph::path(3);
        assert_eq!(
            decide_k_colour_path(&p3, 3, &col(3, &[1, 1, 2]), &col(3, &[1, 2, 1]), 100),
            Err(ClassifierError::ImproperColouring(Side::A))
        );
        assert_eq!(
            decide_k_colour_path(&p3, 3, &col(3, &[1, 2, 1]), &col(4, &[1, 2, 1]), 100),
            Err(ClassifierError::PaletteMismatch { side: Side::B, expected: 3, found: 4 })
        );
    }

    #[test]
    fn oracle_fallback_and_limit() {
        let k4 = Graph::complete(4);
        let d = decide(&k4, 5, &[1, 2, 3, 4], &[4, 3, 2, 1]);
        assert_eq!((d.answer, d.reason), (Answer::Yes, Reason::TrivialYes));
        let cube = Graph::hypercube(3);
        let a: Vec<Colour> = (0..8).map(|v: u32| v.count_ones() % 2 + 1).collect();
        let d = decide_k_colour_path(&cube, 3, &col(3, &a), &col(3, &a), 10).unwrap();
        assert_eq!((d.answer, d.reason), (Answer::Inconclusive, Reason::LimitExceeded));
        let d = decide(&cube, 3, &a, &a);
        assert_eq!((d.answer, d.reason), (Answer::Yes, Reason::OracleResult));
    }

    #[test]
    fn census_examples() {
        let c6 = frozen_census(&Graph::cycle(6), 3, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(c6.method, CensusMethod::Enumeration);
        assert!(c6.count >= 2);
        let c5 = frozen_census(&Graph::cycle(5), 3, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!((c5.count, c5.method), (0, CensusMethod::Divisibility));
        let p4 = frozen_census(&Graph::path(4), 3, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!((p4.count, p4.method), (0, CensusMethod::MinDegree));
        let k4 = frozen_census(&Graph::complete(4), 4, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(k4.count, 24);
        assert_eq!(k4.witnesses.len(), CENSUS_WITNESSES);
    }

    #[test]
    fn classification_examples() {
        let r = classify_instance(&Graph::path(4), 4, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(r.empirical_type, EmpiricalType::Type1);
        assert_eq!(r.class_type, Some(1));
        let r = classify_instance(&Graph::hypercube(3), 4, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(r.empirical_type, EmpiricalType::Type2);
        assert_eq!(r.class_type, Some(2));
        let r = classify_instance(&Graph::cycle(5), 3, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(r.empirical_type, EmpiricalType::Type3);
        assert_eq!(r.class_type, Some(3));
        assert_eq!(class_type(4, 4), None);
    }
}
