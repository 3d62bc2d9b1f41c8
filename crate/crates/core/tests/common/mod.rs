//! Test-only oracles and graph generators, independent of the library's
//! evaluation paths.

#![allow(dead_code)]

use isdlab::Graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every labeled graph on `n` vertices whose edge mask describes a connected
/// graph, as `Graph`s.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total).filter_map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !mask_connected(n, &edges) {
            return None;
        }
        Some(Graph::from_edge_list(n, &edges).expect("connected graphs are valid"))
    })
}

fn mask_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut parts = n;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            parts -= 1;
        }
    }
    parts == 1
}

/// Random graph with `n` vertices and edge probability `p`, redrawn until no
/// vertex is isolated. Uses its own generator, not the library sampler.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if let Ok(g) = Graph::from_edge_list(n, &edges) {
            return g;
        }
    }
}

/// `count` seeded random graphs with `n ∈ [min_n, max_n]`, `p ∈ [0.1, 0.9]`.
pub fn random_graphs(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let p = rng.gen_range(0.1..=0.9);
            random_graph(&mut rng, n, p)
        })
        .collect()
}

/// Adjacency matrix of `g`.
pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// `Σ_{u<v, uv ∈ E} f(d_u, d_v)` by a double loop over the adjacency
/// matrix, with degrees recounted from the matrix rows.
pub fn naive_edge_sum(g: &Graph, f: impl Fn(usize, usize) -> f64) -> f64 {
    let m = adjacency_matrix(g);
    let n = m.len();
    let deg: Vec<usize> = m.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let mut total = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            if m[u][v] {
                total += f(deg[u], deg[v]);
            }
        }
    }
    total
}

/// Inverse sum indeg index `Σ d_u d_v / (d_u + d_v)`.
pub fn isi(g: &Graph) -> f64 {
    naive_edge_sum(g, |x, y| (x * y) as f64 / (x + y) as f64)
}

/// Every vertex sees neighbors of a single degree.
pub fn neighbors_share_degree(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|u| {
        let nbrs = g.neighbors(u);
        nbrs.iter().all(|&v| g.degree(v) == g.degree(nbrs[0]))
    })
}

/// Every connected component is regular, by brute force over components.
pub fn components_regular(g: &Graph) -> bool {
    g.connected_components().iter().all(|c| {
        c.iter().all(|&u| g.degree(u) == g.degree(c[0]))
    })
}

pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * y.abs().max(x.abs()).max(f64::MIN_POSITIVE)
}
