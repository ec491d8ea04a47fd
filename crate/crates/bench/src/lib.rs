//! Benchmark fixtures.

use recolour_core::Graph;

/// Path with a chord from its second vertex to every third vertex: connected,
/// non-regular, maximum degree grows slowly with `n`.
pub fn chorded_path(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    edges.extend((4..n).step_by(3).take(2).map(|v| (1, v)));
    Graph::from_edges(n, edges).expect("chorded path is simple")
}

/// Grid graph `rows × cols`, made non-regular by any side length above 2.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("grid is simple")
}
