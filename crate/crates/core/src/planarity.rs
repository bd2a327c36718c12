//! Planarity decision.
//!
//! Graphs above the Euler bound `|E| <= 3n - 6` are rejected outright; the rest
//! go through the left-right planarity test from `rustworkx-core`.

use rustworkx_core::petgraph::graph::UnGraph;
use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub reason: String,
}

pub fn planarity(g: &Graph) -> PlanarityVerdict {
    let (n, m) = (g.n(), g.edge_count());
    if n >= 3 && m > 3 * n - 6 {
        return PlanarityVerdict {
            planar: false,
            reason: format!("edge bound: |E| = {m} > 3n - 6 = {}", 3 * n - 6),
        };
    }
    if n < 5 {
        return PlanarityVerdict {
            planar: true,
            reason: "fewer than five vertices".into(),
        };
    }
    let mut pg: UnGraph<(), ()> = UnGraph::from_edges(g.edges().map(|(u, v)| (u as u32, v as u32)));
    while pg.node_count() < n {
        pg.add_node(());
    }
    let planar = rustworkx_core::planar::is_planar(&pg);
    PlanarityVerdict {
        planar,
        reason: "left-right planarity test".into(),
    }
}

pub fn is_planar(g: &Graph) -> bool {
    planarity(g).planar
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn kuratowski_and_small() {
        assert!(is_planar(&complete(4)));
        let v = planarity(&complete(5));
        assert!(!v.planar);
        assert!(v.reason.starts_with("edge bound"));
        let v = planarity(&k33());
        assert!(!v.planar);
        assert_eq!(v.reason, "left-right planarity test");
        assert!(is_planar(&Graph::new(0)));
        assert!(is_planar(&Graph::new(7)));
    }

    #[test]
    fn joins_are_planar() {
        let p = PathPartition::new(vec![3, 2, 2]).unwrap();
        assert!(is_planar(&join_k2(&realize_partition(&p)).unwrap()));
        assert!(is_planar(&k2_plus(30).unwrap()));
        // a cycle in H gives a K5 minor once it has a spare vertex
        let h = cycle(3).unwrap().disjoint_union(&Graph::new(1));
        assert!(!is_planar(&join_k2(&h).unwrap()));
    }

    #[test]
    fn isolated_tail_vertices_counted() {
        // K5 on the low ids plus isolated vertices: edge bound no longer fires
        let g = complete(5).disjoint_union(&Graph::new(4));
        assert!(!is_planar(&g));
    }
}
