//! Canonical labelling by individualisation and refinement.
//!
//! The search tree is explored exhaustively (no automorphism pruning), which is
//! fine for the small orders used by the internal enumerator but exponential on
//! highly symmetric graphs with many vertices.

use crate::graph::Graph;
use crate::graph6::to_graph6;

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every other cell until stable.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.n();
    let mut cell_of = vec![0; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Partition = Vec::with_capacity(k);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; k];
                    for u in g.neighbors(v) {
                        sig[cell_of[u]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(String, Vec<usize>)>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let mut perm = vec![0; g.n()];
            for (label, c) in cells.iter().enumerate() {
                perm[c[0]] = label;
            }
            let cert = to_graph6(&g.permuted(&perm)).expect("small graph");
            if best.as_ref().is_none_or(|(b, _)| cert > *b) {
                *best = Some((cert, perm));
            }
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut next = cells.clone();
                let rest: Vec<usize> = cells[target].iter().copied().filter(|&u| u != v).collect();
                next[target] = vec![v];
                next.insert(target + 1, rest);
                search(g, next, best);
            }
        }
    }
}

/// Relabelling `perm` (vertex `v` becomes `perm[v]`) after which isomorphic
/// graphs are identical.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut best = None;
    search(g, vec![(0..g.n()).collect()], &mut best);
    best.expect("at least one leaf").1
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// graph6 string of the canonical form.
pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&canonical_form(g)).expect("small graph")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (mut da, mut db) = (a.degrees(), b.degrees());
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_graph6(a) == canonical_graph6(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;
    use proptest::prelude::*;

    #[test]
    fn isomorphic_labelings_agree() {
        let a = k2_plus(6).unwrap();
        let b = a.permuted(&[5, 3, 1, 0, 2, 4]);
        assert_ne!(a, b);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(
            &cycle(6).unwrap(),
            &cycle(3).unwrap().disjoint_union(&cycle(3).unwrap())
        ));
        assert!(!is_isomorphic(&path(4).unwrap(), &k2_bipartite(4).unwrap()));
    }

    #[test]
    fn regular_graphs_distinguished() {
        // both 3-regular: refinement alone cannot tell them apart
        let mut prism = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap());
        for i in 0..3 {
            prism.add_edge(i, i + 3).unwrap();
        }
        let k33 = {
            let mut g = Graph::new(6);
            for u in 0..3 {
                for v in 3..6 {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        };
        assert!(!is_isomorphic(&prism, &k33));
    }

    proptest! {
        #[test]
        fn canonical_form_is_invariant(edges in proptest::collection::vec((0usize..7, 0usize..7), 0..15), seed in any::<u64>()) {
            let mut g = Graph::new(7);
            for (u, v) in edges {
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
            let mut perm: Vec<usize> = (0..7).collect();
            let mut s = seed;
            for i in (1..7).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.permuted(&perm);
            prop_assert_eq!(canonical_graph6(&g), canonical_graph6(&h));
        }
    }
}
