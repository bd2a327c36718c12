//! Maximum-spectral-radius searches.
//!
//! Two candidate sources are supported: the `K2 + H` family indexed by path
//! partitions (`family_search`), and whole classes of connected planar graphs
//! (`exhaustive_search`), either enumerated internally for small orders or read
//! from a graph6 stream. Candidates are scored in parallel and merged by a
//! final sort, so reports do not depend on the number of workers.

mod ascent;
mod enumerate;
mod exhaustive;
mod family;
mod partitions;

use std::time::Duration;

use serde::Serialize;

pub use ascent::{verify_transformation_ascent, AscentMove, AscentReport};
pub use enumerate::{connected_graph6, connected_graphs, INTERNAL_MAX_ORDER};
pub use exhaustive::{exhaustive_search, CandidateSource, StreamIssue};
pub use family::{family_max_part, family_search};
pub use partitions::{enumerate_partitions, Partitions};

use crate::charpoly::{charpoly_rho_oracle, ORACLE_MAX_ORDER};
use crate::constructions::PathPartition;
use crate::error::Result;
use crate::graph::Graph;
use crate::patterns::ForbiddenPattern;
use crate::sig15;
use crate::spectral::{DEFAULT_GAP_TOL, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Internal,
    Graph6Stream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapFlag {
    Strict,
    Indistinguishable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedCandidate {
    pub rank: usize,
    pub descriptor: String,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PathPartition>,
    #[serde(serialize_with = "sig15::f64")]
    pub rho: f64,
    #[serde(serialize_with = "sig15::f64")]
    pub residual: f64,
}

/// A reference value printed next to the ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub label: String,
    #[serde(serialize_with = "sig15::f64")]
    pub rho: f64,
    /// `rho(top) - rho`, absent when nothing passed the filters.
    #[serde(serialize_with = "sig15::option")]
    pub top_minus_reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub n: usize,
    pub pattern: ForbiddenPattern,
    pub source: Source,
    /// Candidates examined before filtering.
    pub visited: usize,
    /// Candidates that passed every filter.
    pub passed: usize,
    pub ranked: Vec<RankedCandidate>,
    /// Relation between each consecutive pair in `ranked`.
    pub gap_flags: Vec<GapFlag>,
    pub theorem_extremal: Option<String>,
    pub matches_theorem_extremal: Option<bool>,
    pub comparisons: Vec<Comparison>,
    pub skipped: Vec<StreamIssue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl SearchReport {
    /// The report with timing removed, for byte-level comparisons.
    pub fn without_timing(&self) -> SearchReport {
        SearchReport {
            timing: None,
            ..self.clone()
        }
    }

    pub fn top(&self) -> Option<&RankedCandidate> {
        self.ranked.first()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub top_k: usize,
    pub gap_tol: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Stream mode: skip the planarity re-check.
    pub trust_planar: bool,
    /// Stream mode: abort on the first malformed line instead of skipping it.
    pub strict_stream: bool,
    pub record_timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            top_k: 10,
            gap_tol: DEFAULT_GAP_TOL,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            trust_planar: false,
            strict_stream: false,
            record_timing: false,
        }
    }
}

/// A filtered candidate with its spectral data.
#[derive(Debug, Clone)]
pub(crate) struct Scored {
    pub descriptor: String,
    pub graph6: String,
    pub partition: Option<PathPartition>,
    pub graph: Graph,
    pub rho: f64,
    pub residual: f64,
}

/// Sorts candidates by spectral radius, descending.
///
/// Values closer than `10 * gap_tol` on graphs with at most 12 vertices are
/// replaced by the exact characteristic-polynomial root before ordering. Runs
/// of values within `gap_tol` of their neighbour are indistinguishable and are
/// ordered by graph6 string instead.
pub(crate) fn rank(mut scored: Vec<Scored>, gap_tol: f64) -> Result<(Vec<Scored>, Vec<GapFlag>)> {
    let key_sort = |v: &mut Vec<(f64, Scored)>| {
        v.sort_by(|a, b| {
            b.0.total_cmp(&a.0)
                .then_with(|| a.1.graph6.cmp(&b.1.graph6))
        });
    };
    scored.sort_by(|a, b| {
        b.rho
            .total_cmp(&a.rho)
            .then_with(|| a.graph6.cmp(&b.graph6))
    });
    let mut exact = vec![false; scored.len()];
    for i in 1..scored.len() {
        let (a, b) = (&scored[i - 1], &scored[i]);
        if a.rho - b.rho <= 10.0 * gap_tol
            && a.graph.n() <= ORACLE_MAX_ORDER
            && b.graph.n() <= ORACLE_MAX_ORDER
        {
            exact[i - 1] = true;
            exact[i] = true;
        }
    }
    let mut keyed: Vec<(f64, Scored)> = scored
        .into_iter()
        .zip(exact)
        .map(|(s, e)| {
            Ok((
                if e {
                    charpoly_rho_oracle(&s.graph)?.value
                } else {
                    s.rho
                },
                s,
            ))
        })
        .collect::<Result<_>>()?;
    key_sort(&mut keyed);

    let mut out: Vec<(f64, Scored)> = Vec::with_capacity(keyed.len());
    let mut cluster: Vec<(f64, Scored)> = Vec::new();
    let flush = |cluster: &mut Vec<(f64, Scored)>, out: &mut Vec<(f64, Scored)>| {
        cluster.sort_by(|a, b| a.1.graph6.cmp(&b.1.graph6));
        out.append(cluster);
    };
    for item in keyed {
        if let Some(last) = cluster.last() {
            if last.0 - item.0 > gap_tol {
                flush(&mut cluster, &mut out);
            }
        }
        cluster.push(item);
    }
    flush(&mut cluster, &mut out);

    let flags = out
        .windows(2)
        .map(|w| {
            if (w[0].0 - w[1].0).abs() > gap_tol {
                GapFlag::Strict
            } else {
                GapFlag::Indistinguishable
            }
        })
        .collect();
    Ok((out.into_iter().map(|(_, s)| s).collect(), flags))
}

pub(crate) fn finish_ranking(
    ranked: Vec<Scored>,
    mut flags: Vec<GapFlag>,
    top_k: usize,
) -> (Vec<RankedCandidate>, Vec<GapFlag>) {
    flags.truncate(top_k.saturating_sub(1));
    let ranked = ranked
        .into_iter()
        .take(top_k)
        .enumerate()
        .map(|(i, s)| RankedCandidate {
            rank: i + 1,
            descriptor: s.descriptor,
            graph6: s.graph6,
            partition: s.partition,
            rho: s.rho,
            residual: s.residual,
        })
        .collect();
    (ranked, flags)
}

pub(crate) fn elapsed(record: bool, d: Duration) -> Option<Timing> {
    record.then_some(Timing {
        elapsed_ms: d.as_millis(),
    })
}
