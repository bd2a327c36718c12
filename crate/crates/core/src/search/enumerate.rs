//! Connected graphs up to isomorphism, grown one vertex at a time.
//!
//! Every connected graph has a vertex whose removal keeps it connected, so
//! attaching a new vertex to every non-empty neighbour set of every connected
//! graph on `n - 1` vertices reaches all classes on `n` vertices. Duplicates
//! are removed through canonical graph6 strings.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::canonical::canonical_graph6;
use crate::error::{Result, SpexError};
use crate::graph::Graph;
use crate::graph6::parse_graph6;

pub const INTERNAL_MAX_ORDER: usize = 8;

/// Canonical graph6 strings of the connected graphs on `n` vertices, sorted.
pub fn connected_graph6(n: usize) -> Result<Vec<String>> {
    if n == 0 || n > INTERNAL_MAX_ORDER {
        return Err(SpexError::InvalidParameter(format!(
            "internal enumeration supports 1 <= n <= {INTERNAL_MAX_ORDER}, got {n}"
        )));
    }
    let mut level: Vec<String> = vec![canonical_graph6(&Graph::new(1))];
    for order in 2..=n {
        let base: Vec<Graph> = level
            .iter()
            .map(|s| parse_graph6(s.as_bytes()).expect("own output"))
            .collect();
        let found: BTreeSet<String> = base
            .par_iter()
            .map(|g| {
                let mut out = BTreeSet::new();
                for mask in 1u32..(1 << (order - 1)) {
                    let mut h = g.disjoint_union(&Graph::new(1));
                    for v in (0..order - 1).filter(|v| mask >> v & 1 == 1) {
                        h.add_edge(v, order - 1).expect("in range");
                    }
                    out.insert(canonical_graph6(&h));
                }
                out
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        level = found.into_iter().collect();
    }
    Ok(level)
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_graph6(n)?
        .iter()
        .map(|s| parse_graph6(s.as_bytes()).expect("own output"))
        .collect())
}
