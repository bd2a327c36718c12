use std::collections::BTreeSet;

use serde::Serialize;

use crate::constructions::{
    extremal_partition, join_k2, realize_partition, transform, PathPartition,
};
use crate::error::{Result, SpexError};
use crate::patterns::{join_is_free, ForbiddenPattern};
use crate::sig15;
use crate::spectral::{compare_rho, spectral_radius, RhoOrdering, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AscentMove {
    pub s1: usize,
    pub s2: usize,
    pub result: PathPartition,
    #[serde(serialize_with = "sig15::f64")]
    pub rho: f64,
    /// `rho(K2 + result)` relative to `rho(K2 + base)`.
    pub ordering: RhoOrdering,
    pub increased: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AscentReport {
    pub pattern: ForbiddenPattern,
    pub n: usize,
    pub base: PathPartition,
    #[serde(serialize_with = "sig15::f64")]
    pub base_rho: f64,
    pub moves: Vec<AscentMove>,
    /// Moves dropped because the result is no longer pattern-free.
    pub excluded: usize,
    /// No admissible move strictly increases the spectral radius.
    pub is_local_max: bool,
    pub is_theorem_extremal: bool,
}

/// Applies every `(s1, s2)` move to `base` that keeps `K2 + H` pattern-free and
/// records whether the spectral radius strictly rises.
pub fn verify_transformation_ascent(
    base: &PathPartition,
    pattern: &ForbiddenPattern,
    n: usize,
    gap_tol: f64,
) -> Result<AscentReport> {
    if base.total() + 2 != n {
        return Err(SpexError::InvalidParameter(format!(
            "partition {base} covers {} vertices, expected n - 2 = {}",
            base.total(),
            n.saturating_sub(2)
        )));
    }
    if !join_is_free(base, pattern)? {
        return Err(SpexError::InvalidParameter(format!(
            "K2 + H[{base}] is not {pattern}-free"
        )));
    }
    let base_graph = join_k2(&realize_partition(base))?;
    let base_rho = spectral_radius(&base_graph, DEFAULT_TOL, DEFAULT_MAX_ITER)?.rho;

    let parts = base.parts();
    let mut pairs = BTreeSet::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            pairs.insert((parts[i], parts[j]));
        }
    }
    let mut moves = Vec::new();
    let mut excluded = 0;
    for (s1, s2) in pairs {
        let result = transform(base, s1, s2)?;
        if !join_is_free(&result, pattern)? {
            excluded += 1;
            continue;
        }
        let g = join_k2(&realize_partition(&result))?;
        let rho = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER)?.rho;
        let ordering = compare_rho(&g, &base_graph, gap_tol)?;
        moves.push(AscentMove {
            s1,
            s2,
            result,
            rho,
            ordering,
            increased: ordering == RhoOrdering::Greater,
        });
    }
    let is_theorem_extremal = extremal_partition(pattern, n).ok().flatten().as_ref() == Some(base);
    Ok(AscentReport {
        pattern: pattern.clone(),
        n,
        base: base.clone(),
        base_rho,
        is_local_max: moves.iter().all(|m| !m.increased),
        moves,
        excluded,
        is_theorem_extremal,
    })
}
