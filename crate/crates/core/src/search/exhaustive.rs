use std::io::BufRead;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    elapsed, finish_ranking, rank, Comparison, Scored, SearchMode, SearchOptions, SearchReport,
    Source, INTERNAL_MAX_ORDER,
};
use crate::canonical::is_isomorphic;
use crate::constructions::{extremal_construction, extremal_partition};
use crate::error::{Result, SpexError};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};
use crate::patterns::{is_free, ForbiddenPattern};
use crate::planarity::is_planar;
use crate::search::connected_graphs;
use crate::search::family::join_descriptor;
use crate::spectral::{rho_closed_k2n2, spectral_radius};

/// Where an exhaustive search draws its candidates from.
pub enum CandidateSource<'a> {
    /// Connected graphs on `n <= 8` vertices, one per isomorphism class.
    Internal,
    /// One graph6 record per line.
    Stream(&'a mut dyn BufRead),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StreamIssue {
    pub line: usize,
    pub message: String,
}

fn read_stream(
    reader: &mut dyn BufRead,
    n: usize,
    strict: bool,
) -> Result<(Vec<Graph>, Vec<StreamIssue>)> {
    let mut graphs = Vec::new();
    let mut issues = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| SpexError::Stream {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed == ">>graph6<<" {
            continue;
        }
        let outcome = parse_graph6(trimmed.as_bytes())
            .map_err(|e| e.to_string())
            .and_then(|g| {
                if g.n() == n {
                    Ok(g)
                } else {
                    Err(format!("order {} differs from requested n = {n}", g.n()))
                }
            });
        match outcome {
            Ok(g) => graphs.push(g),
            Err(message) if strict => {
                return Err(SpexError::Stream {
                    line: line_no,
                    message,
                })
            }
            Err(message) => issues.push(StreamIssue {
                line: line_no,
                message,
            }),
        }
    }
    Ok((graphs, issues))
}

/// Ranks the connected planar `pattern`-free graphs on `n` vertices by spectral
/// radius.
///
/// Internal candidates are re-checked for planarity like any other; stream
/// candidates skip that check only when `opts.trust_planar` is set.
pub fn exhaustive_search(
    n: usize,
    pattern: &ForbiddenPattern,
    source: CandidateSource<'_>,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    pattern.validate()?;
    let start = Instant::now();
    let (candidates, skipped, source_tag, check_planar) = match source {
        CandidateSource::Internal => {
            if n > INTERNAL_MAX_ORDER {
                return Err(SpexError::InvalidParameter(format!(
                    "internal enumeration is limited to n <= {INTERNAL_MAX_ORDER}; supply a graph6 stream"
                )));
            }
            (connected_graphs(n)?, Vec::new(), Source::Internal, true)
        }
        CandidateSource::Stream(reader) => {
            let (g, issues) = read_stream(reader, n, opts.strict_stream)?;
            (g, issues, Source::Graph6Stream, !opts.trust_planar)
        }
    };
    let visited = candidates.len();
    let members = pattern.members()?;

    let scored: Vec<Scored> = candidates
        .into_par_iter()
        .map(|g| -> Result<Option<Scored>> {
            if g.n() == 0 || !g.is_connected()? {
                return Ok(None);
            }
            if check_planar && !is_planar(&g) {
                return Ok(None);
            }
            if members
                .iter()
                .any(|m| crate::patterns::contains_subgraph(&g, m))
            {
                return Ok(None);
            }
            let r = spectral_radius(&g, opts.tol, opts.max_iter)?;
            let graph6 = to_graph6(&g)?;
            Ok(Some(Scored {
                descriptor: graph6.clone(),
                graph6,
                partition: None,
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

    let mut comparisons = Vec::new();
    let mut theorem_extremal = None;
    let mut matches = None;
    if !matches!(pattern, ForbiddenPattern::Explicit(_)) {
        if let Ok(expected) = extremal_construction(pattern, n) {
            let label = match extremal_partition(pattern, n)? {
                Some(p) => join_descriptor(&p),
                None => "K_(2,n-2)".to_string(),
            };
            let free = is_free(&expected, pattern)? && is_planar(&expected);
            let r = spectral_radius(&expected, opts.tol, opts.max_iter)?;
            comparisons.push(Comparison {
                label: format!(
                    "theorem extremal {label}{}",
                    if free { "" } else { " (not free at this n)" }
                ),
                rho: r.rho,
                top_minus_reference: ranked.first().map(|t| t.rho - r.rho),
            });
            matches = ranked.first().map(|t| is_isomorphic(&t.graph, &expected));
            theorem_extremal = Some(label);
        }
    }
    if *pattern == ForbiddenPattern::Theta(4) && n >= 3 {
        let closed = rho_closed_k2n2(n)?;
        comparisons.push(Comparison {
            label: "K_(2,n-2) closed form sqrt(2n-4)".into(),
            rho: closed,
            top_minus_reference: ranked.first().map(|t| t.rho - closed),
        });
    }
    let (ranked, gap_flags) = finish_ranking(ranked, flags, opts.top_k);
    Ok(SearchReport {
        mode: SearchMode::Exhaustive,
        n,
        pattern: pattern.clone(),
        source: source_tag,
        visited,
        passed,
        ranked,
        gap_flags,
        theorem_extremal,
        matches_theorem_extremal: matches,
        comparisons,
        skipped,
        timing: elapsed(opts.record_timing, start.elapsed()),
    })
}
