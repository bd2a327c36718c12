use std::time::Instant;

use rayon::prelude::*;

use super::{
    elapsed, finish_ranking, rank, Comparison, Scored, SearchMode, SearchOptions, SearchReport,
    Source,
};
use crate::constructions::{extremal_partition, join_k2, realize_partition, PathPartition};
use crate::error::{Result, SpexError};
use crate::graph6::to_graph6;
use crate::patterns::{join_is_free, ForbiddenPattern};
use crate::planarity::is_planar;
use crate::search::enumerate_partitions;
use crate::spectral::spectral_radius;

/// Largest part a free `K2 + H` can have, used to prune the enumeration.
pub fn family_max_part(pattern: &ForbiddenPattern, total: usize) -> Result<usize> {
    match *pattern {
        ForbiddenPattern::Cll(3) => Ok(if total <= 2 { total } else { 1 }),
        ForbiddenPattern::Cll(l) if l >= 4 => Ok(2 * l - 4),
        ForbiddenPattern::Theta(k) if k >= 5 => Ok(k - 3),
        ForbiddenPattern::Theta(4) => Err(SpexError::UnsupportedPattern(
            "theta:4 extremal graph K_(2,n-2) is not of the form K2 + H; use extremal-search"
                .into(),
        )),
        _ => Err(SpexError::UnsupportedPattern(format!(
            "family search needs cll:L or theta:K (K >= 5), got {pattern}"
        ))),
    }
}

pub(crate) fn join_descriptor(p: &PathPartition) -> String {
    format!("K2+H[{p}]")
}

/// Ranks every `K2 + H` on `n` vertices that avoids `pattern`.
pub fn family_search(
    pattern: &ForbiddenPattern,
    n: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    pattern.validate()?;
    if n < 3 {
        return Err(SpexError::InvalidParameter(format!(
            "family search needs n >= 3, got {n}"
        )));
    }
    let start = Instant::now();
    let total = n - 2;
    let cap = family_max_part(pattern, total)?;
    let partitions: Vec<PathPartition> = enumerate_partitions(total, Some(cap)).collect();
    let visited = partitions.len();

    let scored: Vec<Scored> = partitions
        .into_par_iter()
        .map(|p| -> Result<Option<Scored>> {
            if !join_is_free(&p, pattern)? {
                return Ok(None);
            }
            let g = join_k2(&realize_partition(&p))?;
            if !is_planar(&g) {
                return Ok(None);
            }
            let r = spectral_radius(&g, opts.tol, opts.max_iter)?;
            Ok(Some(Scored {
                descriptor: join_descriptor(&p),
                graph6: to_graph6(&g)?,
                partition: Some(p),
                graph: g,
                rho: r.rho,
                residual: r.residual,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let passed = scored.len();

    let (ranked, flags) = rank(scored, opts.gap_tol)?;
    let expected = extremal_partition(pattern, n)?;
    let matches = match (&expected, ranked.first()) {
        (Some(e), Some(top)) => Some(top.partition.as_ref() == Some(e)),
        _ => None,
    };
    let mut comparisons = Vec::new();
    if let Some(e) = &expected {
        let g = join_k2(&realize_partition(e))?;
        let r = spectral_radius(&g, opts.tol, opts.max_iter)?;
        comparisons.push(Comparison {
            label: format!("theorem extremal {}", join_descriptor(e)),
            rho: r.rho,
            top_minus_reference: ranked.first().map(|t| t.rho - r.rho),
        });
    }
    let (ranked, gap_flags) = finish_ranking(ranked, flags, opts.top_k);
    Ok(SearchReport {
        mode: SearchMode::Family,
        n,
        pattern: pattern.clone(),
        source: Source::Internal,
        visited,
        passed,
        ranked,
        gap_flags,
        theorem_extremal: expected.as_ref().map(join_descriptor),
        matches_theorem_extremal: matches,
        comparisons,
        skipped: Vec::new(),
        timing: elapsed(opts.record_timing, start.elapsed()),
    })
}
