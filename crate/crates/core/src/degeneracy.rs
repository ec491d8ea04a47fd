//! Degeneracy orderings and partitions into parts of bounded degeneracy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegeneracyError {
    #[error("graph is regular")]
    GraphIsRegular,
    #[error("graph is disconnected")]
    GraphDisconnected,
    #[error("degeneracy {degeneracy} exceeds maximum degree minus one ({max_degree} - 1)")]
    BoundViolated { degeneracy: usize, max_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("at least one budget is required")]
    NoBudgets,
    #[error("budgets sum to {sum}, expected k - r + 1 = {expected}")]
    BudgetSumMismatch { sum: usize, expected: i64 },
    #[error("graph has degeneracy {degeneracy}, not at most {k}")]
    NotKDegenerate { degeneracy: usize, k: usize },
    #[error("first part must have budget 0 to be augmented, found {0}")]
    FirstBudgetNonZero(usize),
    #[error("vertices {0} and {1} in the first part are adjacent")]
    PartNotIndependent(Vertex, Vertex),
}

/// Vertex order in which every vertex has at most `degeneracy()` earlier
/// neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
    back_degree: Vec<usize>,
}

impl DegeneracyOrdering {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Index of `v` in the order.
    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    /// Neighbours of `v` placed before it.
    pub fn back_degree(&self, v: Vertex) -> usize {
        self.back_degree[v]
    }

    pub fn degeneracy(&self) -> usize {
        self.back_degree.iter().copied().max().unwrap_or(0)
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (lowest index on
/// ties) and places it last among the vertices still unplaced. Quadratic in
/// `n`, matching the simple selection scan.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut remaining_degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = vec![0; n];
    for slot in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (remaining_degree[v], v))
            .expect("a vertex remains for every slot");
        removed[v] = true;
        order[slot] = v;
        for &w in g.neighbours(v) {
            if !removed[w] {
                remaining_degree[w] -= 1;
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let back_degree = g
        .vertices()
        .map(|v| {
            g.neighbours(v)
                .iter()
                .filter(|&&w| position[w] < position[v])
                .count()
        })
        .collect();
    DegeneracyOrdering {
        order,
        position,
        back_degree,
    }
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_ordering(g).degeneracy()
}

/// Degeneracy of a connected non-regular graph, which is at most `Δ - 1`.
pub fn check_non_regular_degeneracy(g: &Graph) -> Result<usize, DegeneracyError> {
    if !g.is_connected() {
        return Err(DegeneracyError::GraphDisconnected);
    }
    if g.is_regular() {
        return Err(DegeneracyError::GraphIsRegular);
    }
    let d = degeneracy(g);
    let max_degree = g.max_degree();
    if d + 1 > max_degree {
        return Err(DegeneracyError::BoundViolated {
            degeneracy: d,
            max_degree,
        });
    }
    Ok(d)
}

/// Partition `V_1, …, V_r` where `G[V_t]` is `p_t`-degenerate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneratePartition {
    parts: Vec<Vec<Vertex>>,
    budgets: Vec<usize>,
    part_of: Vec<usize>,
    /// Neighbours already in its part when each vertex was inserted.
    insertion_witness: Vec<usize>,
}

impl DegeneratePartition {
    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn budgets(&self) -> &[usize] {
        &self.budgets
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    pub fn insertion_witness(&self, v: Vertex) -> usize {
        self.insertion_witness[v]
    }
}

/// Places vertices along a degeneracy ordering, each into the first part
/// where it has at most that part's budget of already-placed neighbours.
///
/// Requires `G` to be `k`-degenerate and `Σ p_t = k - r + 1`; then some part
/// always has room, since otherwise the vertex would have at least `k + 1`
/// earlier neighbours.
pub fn degenerate_partition(
    g: &Graph,
    k: usize,
    budgets: &[usize],
) -> Result<DegeneratePartition, PartitionError> {
    let r = budgets.len();
    if r == 0 {
        return Err(PartitionError::NoBudgets);
    }
    let sum: usize = budgets.iter().sum();
    let expected = k as i64 - r as i64 + 1;
    if sum as i64 != expected {
        return Err(PartitionError::BudgetSumMismatch { sum, expected });
    }
    let ordering = degeneracy_ordering(g);
    let d = ordering.degeneracy();
    if d > k {
        return Err(PartitionError::NotKDegenerate { degeneracy: d, k });
    }

    let n = g.n();
    // placed_in[v * r + q]: neighbours of v already placed in part q.
    let mut placed_in = vec![0usize; n * r];
    let mut part_of = vec![usize::MAX; n];
    let mut insertion_witness = vec![0; n];
    let mut parts = vec![Vec::new(); r];
    for &v in ordering.order() {
        let q = (0..r)
            .find(|&q| placed_in[v * r + q] <= budgets[q])
            .expect("a k-degenerate graph always leaves room in some part");
        part_of[v] = q;
        insertion_witness[v] = placed_in[v * r + q];
        parts[q].push(v);
        for &w in g.neighbours(v) {
            placed_in[w * r + q] += 1;
        }
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    Ok(DegeneratePartition {
        parts,
        budgets: budgets.to_vec(),
        part_of,
        insertion_witness,
    })
}

/// Moves vertices into the first part, scanning in ascending order, until it
/// is a maximal independent set. Other parts only lose vertices, so their
/// degeneracy cannot grow.
pub fn augment_to_maximal_independent(
    g: &Graph,
    partition: &DegeneratePartition,
) -> Result<DegeneratePartition, PartitionError> {
    if partition.budgets[0] != 0 {
        return Err(PartitionError::FirstBudgetNonZero(partition.budgets[0]));
    }
    let mut in_first: Vec<bool> = partition.part_of.iter().map(|&q| q == 0).collect();
    for &v in &partition.parts[0] {
        if let Some(&w) = g.neighbours(v).iter().find(|&&w| in_first[w]) {
            return Err(PartitionError::PartNotIndependent(v.min(w), v.max(w)));
        }
    }
    let mut out = partition.clone();
    for v in g.vertices() {
        if in_first[v] || g.neighbours(v).iter().any(|&w| in_first[w]) {
            continue;
        }
        in_first[v] = true;
        out.part_of[v] = 0;
        out.insertion_witness[v] = 0;
    }
    let r = out.parts.len();
    out.parts = vec![Vec::new(); r];
    for v in g.vertices() {
        out.parts[out.part_of[v]].push(v);
    }
    Ok(out)
}
