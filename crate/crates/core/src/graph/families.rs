//! Named graph families used in examples and tests.

use super::Graph;

/// Path on `n ≥ 2` vertices.
pub fn path(n: usize) -> Graph {
    assert!(n >= 2, "path needs at least two vertices");
    let edges = (0..n - 1).map(|u| (u, u + 1)).collect();
    Graph::from_canonical_edges(n, edges).expect("paths have no isolated vertices")
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|u| (u, u + 1)).collect();
    pairs.push((0, n - 1));
    Graph::from_edge_list(n, &pairs).expect("valid cycle")
}

/// Complete graph on `n ≥ 2` vertices.
pub fn complete(n: usize) -> Graph {
    assert!(n >= 2, "complete graph needs at least two vertices");
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_canonical_edges(n, edges).expect("valid complete graph")
}

/// Star `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// `K_{left,right}`; left side is `0..left`.
pub fn complete_bipartite(left: usize, right: usize) -> Graph {
    assert!(left >= 1 && right >= 1, "both sides must be non-empty");
    let edges = (0..left)
        .flat_map(|u| (left..left + right).map(move |v| (u, v)))
        .collect();
    Graph::from_canonical_edges(left + right, edges).expect("valid complete bipartite graph")
}
