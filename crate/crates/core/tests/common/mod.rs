#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spex_core::Graph;

/// Random connected graph: a random spanning tree plus each other pair with
/// probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Replaces edge `{u, v}` by a path through a new vertex.
pub fn subdivide(g: &Graph, u: usize, v: usize) -> Graph {
    let mut h = g.disjoint_union(&Graph::new(1));
    let w = g.n();
    h.remove_edge(u, v).unwrap();
    h.add_edge(u, w).unwrap();
    h.add_edge(w, v).unwrap();
    h
}

/// Largest adjacency eigenvalue from a dense symmetric eigensolver.
pub fn dense_rho(g: &Graph) -> f64 {
    let n = g.n();
    let m = DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Longest path order by exhaustive DFS over simple paths.
pub fn longest_path_order(g: &Graph) -> usize {
    fn dfs(g: &Graph, v: usize, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for w in g.neighbors(v).collect::<Vec<_>>() {
            if !seen[w] {
                seen[w] = true;
                dfs(g, w, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    let mut best = 0;
    for s in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        dfs(g, s, &mut seen, 1, &mut best);
    }
    best
}
