//! Spectral radius and Perron vector by shifted power iteration.
//!
//! Iterating on `A + I` instead of `A` makes the iteration matrix primitive for
//! every connected graph, so bipartite inputs such as `K_{2,n-2}` converge
//! instead of oscillating. Convergence is certified by the eigenequation
//! residual `max_v |sum_{u ~ v} x_u - rho x_v|` on the max-normalised vector.

use std::cmp::Ordering;

use serde::Serialize;

use crate::charpoly::{charpoly_rho_oracle, ORACLE_MAX_ORDER};
use crate::error::{Result, SpexError};
use crate::graph::Graph;
use crate::patterns::decompose_join;
use crate::sig15;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;
pub const DEFAULT_GAP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    #[serde(serialize_with = "sig15::f64")]
    pub rho: f64,
    /// Perron vector scaled so that its largest entry is exactly 1.
    #[serde(serialize_with = "sig15::vec")]
    pub perron: Vec<f64>,
    pub iterations: usize,
    #[serde(serialize_with = "sig15::f64")]
    pub residual: f64,
}

fn adjacency_apply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(v).map(|u| x[u]).sum();
    }
}

fn residual_of(ax: &[f64], x: &[f64], rho: f64) -> f64 {
    ax.iter()
        .zip(x)
        .map(|(a, xv)| (a - rho * xv).abs())
        .fold(0.0, f64::max)
}

/// Largest adjacency eigenvalue of a connected graph.
///
/// Starts from the all-ones vector and stops at the first iterate whose
/// residual is at most `tol`. The eigenvalue estimate is the Rayleigh quotient
/// of that iterate.
pub fn spectral_radius(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if !g.is_connected()? {
        return Err(SpexError::Disconnected);
    }
    let n = g.n();
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iterations in 0..=max_iter {
        adjacency_apply(g, &x, &mut ax);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let xax: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let rho = xax / xx;
        residual = residual_of(&ax, &x, rho);
        if residual <= tol {
            return Ok(SpectralResult {
                rho,
                perron: x,
                iterations,
                residual,
            });
        }
        if iterations == max_iter {
            break;
        }
        for (xv, a) in x.iter_mut().zip(&ax) {
            *xv += a;
        }
        let max = x.iter().copied().fold(0.0, f64::max);
        for xv in x.iter_mut() {
            *xv /= max;
        }
    }
    Err(SpexError::NoConvergence {
        tol,
        max_iter,
        residual,
    })
}

/// Spectral radius with the default tolerance and iteration cap.
pub fn rho(g: &Graph) -> Result<f64> {
    spectral_radius(g, DEFAULT_TOL, DEFAULT_MAX_ITER).map(|r| r.rho)
}

/// `max_v |(A x)_v - rho x_v|` for the pair stored in `r`.
pub fn eigen_residual(g: &Graph, r: &SpectralResult) -> Result<f64> {
    if r.perron.len() != g.n() {
        return Err(SpexError::DimensionMismatch {
            expected: g.n(),
            got: r.perron.len(),
        });
    }
    let mut ax = vec![0.0; g.n()];
    adjacency_apply(g, &r.perron, &mut ax);
    Ok(residual_of(&ax, &r.perron, r.rho))
}

/// `rho(K_{2,n-2}) = sqrt(2n - 4)`.
pub fn rho_closed_k2n2(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(SpexError::InvalidParameter(format!(
            "K_(2,n-2) needs n >= 3, got {n}"
        )));
    }
    Ok(((2 * n - 4) as f64).sqrt())
}

/// Rayleigh quotient `2 sum_{uv in E} y_u y_v / y^T y` of an arbitrary vector.
pub fn rayleigh_quotient(g: &Graph, y: &[f64]) -> Result<f64> {
    if y.len() != g.n() {
        return Err(SpexError::DimensionMismatch {
            expected: g.n(),
            got: y.len(),
        });
    }
    let num: f64 = g.edges().map(|(u, v)| 2.0 * y[u] * y[v]).sum();
    let den: f64 = y.iter().map(|v| v * v).sum();
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoOrdering {
    Less,
    Greater,
    Indistinguishable,
}

impl RhoOrdering {
    pub fn from_gap(delta: f64, gap_tol: f64) -> Self {
        if delta > gap_tol {
            RhoOrdering::Greater
        } else if delta < -gap_tol {
            RhoOrdering::Less
        } else {
            RhoOrdering::Indistinguishable
        }
    }
}

/// Largest eigenvalue taken over connected components.
fn rho_over_components(g: &Graph, tol: f64) -> Result<f64> {
    if g.n() == 0 {
        return Err(SpexError::EmptyGraph);
    }
    let mut best = f64::NEG_INFINITY;
    for comp in g.components() {
        let r = spectral_radius(&g.induced(&comp), tol, DEFAULT_MAX_ITER)?;
        best = best.max(r.rho);
    }
    Ok(best)
}

/// Orders `rho(g1)` against `rho(g2)` with an explicit indistinguishability band.
///
/// Both estimates are certified to residual `gap_tol / 10`. When both graphs
/// have at most 12 vertices and the estimated gap is within `10 * gap_tol`,
/// the exact characteristic-polynomial roots decide instead.
///
/// Spanning subgraphs obtained by deleting edges may fall apart; for a
/// disconnected argument the largest eigenvalue over its components is used,
/// which is still the spectral radius of the whole graph.
pub fn compare_rho(g1: &Graph, g2: &Graph, gap_tol: f64) -> Result<RhoOrdering> {
    let tol = (gap_tol / 10.0).min(DEFAULT_TOL);
    let r1 = rho_over_components(g1, tol)?;
    let r2 = rho_over_components(g2, tol)?;
    let mut delta = r1 - r2;
    if g1.n() <= ORACLE_MAX_ORDER && g2.n() <= ORACLE_MAX_ORDER && delta.abs() <= 10.0 * gap_tol {
        delta = charpoly_rho_oracle(g1)?.value - charpoly_rho_oracle(g2)?.value;
    }
    Ok(RhoOrdering::from_gap(delta, gap_tol))
}

impl From<Ordering> for RhoOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => RhoOrdering::Less,
            Ordering::Greater => RhoOrdering::Greater,
            Ordering::Equal => RhoOrdering::Indistinguishable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronEntry {
    pub vertex: usize,
    #[serde(serialize_with = "sig15::f64")]
    pub x: f64,
    pub inside: bool,
    /// Whether `x <= 1/10`, the auxiliary bound quoted for large extremal graphs.
    pub at_most_one_tenth: bool,
}

/// Per-vertex comparison of the Perron entries of `K2 + H` against the window
/// `[2/rho, 2/rho + 6/rho^2]`. Nothing is asserted; the window is only known to
/// hold for very large extremal graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronBoundsReport {
    #[serde(serialize_with = "sig15::f64")]
    pub rho: f64,
    pub dominating_pair: [usize; 2],
    #[serde(serialize_with = "sig15::f64")]
    pub lower: f64,
    #[serde(serialize_with = "sig15::f64")]
    pub upper: f64,
    pub entries: Vec<PerronEntry>,
    pub all_inside: bool,
    pub none_inside: bool,
    /// Number of distinct path-vertex entries after rounding to `1e-9`.
    pub distinct_values: usize,
}

pub fn perron_bounds_report(g: &Graph, r: &SpectralResult) -> Result<PerronBoundsReport> {
    if r.perron.len() != g.n() {
        return Err(SpexError::DimensionMismatch {
            expected: g.n(),
            got: r.perron.len(),
        });
    }
    let dec = decompose_join(g).ok_or(SpexError::NoJoinDecomposition)?;
    let lower = 2.0 / r.rho;
    let upper = lower + 6.0 / (r.rho * r.rho);
    let [a, b] = dec.dominating_pair;
    let entries: Vec<PerronEntry> = (0..g.n())
        .filter(|&v| v != a && v != b)
        .map(|v| {
            let x = r.perron[v];
            PerronEntry {
                vertex: v,
                x,
                inside: lower <= x && x <= upper,
                at_most_one_tenth: x <= 0.1,
            }
        })
        .collect();
    let mut rounded: Vec<i64> = entries.iter().map(|e| (e.x * 1e9).round() as i64).collect();
    rounded.sort_unstable();
    rounded.dedup();
    Ok(PerronBoundsReport {
        rho: r.rho,
        dominating_pair: dec.dominating_pair,
        lower,
        upper,
        all_inside: entries.iter().all(|e| e.inside),
        none_inside: entries.iter().all(|e| !e.inside),
        distinct_values: rounded.len(),
        entries,
    })
}
