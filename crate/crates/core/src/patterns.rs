//! Forbidden-subgraph tests.
//!
//! `contains_subgraph` is a plain backtracking embedding search and serves as
//! the ground truth. The closed-form predicates decide freeness of `K2 + H`
//! directly from the path orders of `H`; `oracle_agreement` checks one against
//! the other exhaustively.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{cll_pattern, join_k2, realize_partition, theta_family, PathPartition};
use crate::error::{Result, SpexError};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};
use crate::search::enumerate_partitions;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ForbiddenPattern {
    /// Two `l`-cycles sharing one vertex.
    Cll(usize),
    /// Every Theta graph on `k` vertices.
    Theta(usize),
    Explicit(Graph),
}

impl ForbiddenPattern {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ForbiddenPattern::Cll(l) if l < 3 => Err(SpexError::InvalidParameter(format!(
                "C_(l,l) needs l >= 3, got {l}"
            ))),
            ForbiddenPattern::Theta(k) if k < 4 => Err(SpexError::InvalidParameter(format!(
                "Theta_k needs k >= 4, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    /// The concrete graphs whose presence as a subgraph is forbidden.
    pub fn members(&self) -> Result<Vec<Graph>> {
        self.validate()?;
        match self {
            ForbiddenPattern::Cll(l) => Ok(vec![cll_pattern(*l)?]),
            ForbiddenPattern::Theta(k) => theta_family(*k),
            ForbiddenPattern::Explicit(g) => Ok(vec![g.clone()]),
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenPattern::Cll(l) => write!(f, "cll:{l}"),
            ForbiddenPattern::Theta(k) => write!(f, "theta:{k}"),
            ForbiddenPattern::Explicit(g) => {
                write!(
                    f,
                    "g6:{}",
                    to_graph6(g).unwrap_or_else(|_| "<too large>".into())
                )
            }
        }
    }
}

impl FromStr for ForbiddenPattern {
    type Err = SpexError;

    /// Accepts `cll:L`, `theta:K` and `g6:<graph6>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            SpexError::InvalidParameter(format!(
                "pattern {s:?}: expected cll:L, theta:K or g6:<graph6>"
            ))
        };
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let pattern = match kind.to_ascii_lowercase().as_str() {
            "cll" => ForbiddenPattern::Cll(arg.parse().map_err(|_| bad())?),
            "theta" => ForbiddenPattern::Theta(arg.parse().map_err(|_| bad())?),
            "g6" => ForbiddenPattern::Explicit(parse_graph6(arg.as_bytes())?),
            _ => return Err(bad()),
        };
        pattern.validate()?;
        Ok(pattern)
    }
}

impl Serialize for ForbiddenPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Pattern vertices in search order, each with its already-placed neighbours.
struct SearchPlan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl SearchPlan {
    fn new(pattern: &Graph) -> Self {
        let n = pattern.n();
        let degree = pattern.degrees();
        let mut placed = vec![false; n];
        let mut pos = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut back = Vec::with_capacity(n);
        for step in 0..n {
            // most placed neighbours, then highest degree, then lowest id
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let anchored = pattern.neighbors(v).filter(|&u| placed[u]).count();
                    (anchored, degree[v], std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[v] = true;
            pos[v] = step;
            let mut b: Vec<usize> = pattern
                .neighbors(v)
                .filter(|&u| pos[u] < step)
                .map(|u| pos[u])
                .collect();
            b.sort_unstable();
            order.push(v);
            back.push(b);
        }
        SearchPlan {
            order,
            back,
            degree,
        }
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    plan: &'a SearchPlan,
    host_degree: Vec<usize>,
    images: Vec<usize>,
    used: FixedBitSet,
}

impl Matcher<'_> {
    fn extend(&mut self, step: usize) -> bool {
        if step == self.plan.order.len() {
            return true;
        }
        let need = self.plan.degree[self.plan.order[step]];
        let mut cand = match self.plan.back[step].first() {
            Some(&b) => self.host.neighbor_set(self.images[b]).clone(),
            None => {
                let mut all = FixedBitSet::with_capacity(self.host.n());
                all.insert_range(..);
                all
            }
        };
        for &b in self.plan.back[step].iter().skip(1) {
            cand.intersect_with(self.host.neighbor_set(self.images[b]));
        }
        cand.difference_with(&self.used);
        for h in cand.ones() {
            if self.host_degree[h] < need {
                continue;
            }
            self.images.push(h);
            self.used.insert(h);
            if self.extend(step + 1) {
                return true;
            }
            self.used.set(h, false);
            self.images.pop();
        }
        false
    }
}

/// First embedding of `pattern` into `host` as a (not necessarily induced)
/// subgraph, indexed by pattern vertex. Host candidates are tried in ascending
/// id order, so the result is deterministic.
pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    let plan = SearchPlan::new(pattern);
    let mut m = Matcher {
        host,
        plan: &plan,
        host_degree: host.degrees(),
        images: Vec::with_capacity(pattern.n()),
        used: FixedBitSet::with_capacity(host.n()),
    };
    if !m.extend(0) {
        return None;
    }
    let mut embedding = vec![0; pattern.n()];
    for (step, &v) in plan.order.iter().enumerate() {
        embedding[v] = m.images[step];
    }
    Some(embedding)
}

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_subgraph(host, pattern).is_some()
}

/// A forbidden member found in a host: which member and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub member: usize,
    pub embedding: Vec<usize>,
}

pub fn find_forbidden(host: &Graph, pattern: &ForbiddenPattern) -> Result<Option<Witness>> {
    for (member, p) in pattern.members()?.iter().enumerate() {
        if let Some(embedding) = find_subgraph(host, p) {
            return Ok(Some(Witness { member, embedding }));
        }
    }
    Ok(None)
}

pub fn is_free(host: &Graph, pattern: &ForbiddenPattern) -> Result<bool> {
    Ok(find_forbidden(host, pattern)?.is_none())
}

pub fn is_cll_free(g: &Graph, l: usize) -> Result<bool> {
    is_free(g, &ForbiddenPattern::Cll(l))
}

pub fn is_theta_free(g: &Graph, k: usize) -> Result<bool> {
    is_free(g, &ForbiddenPattern::Theta(k))
}

/// `K2 + H` avoids `C_{l,l}` (`l >= 4`) iff `n1 + n2 <= 2l - 4` and either
/// `n1 <= l - 2` or `n2 + n3 <= l - 3`. Missing parts count as zero.
pub fn claim4_free_predicate(p: &PathPartition, l: usize) -> Result<bool> {
    if l < 4 {
        return Err(SpexError::InvalidParameter(format!(
            "C_(l,l) predicate needs l >= 4, got {l}"
        )));
    }
    let (n1, n2, n3) = (p.nth(1), p.nth(2), p.nth(3));
    Ok((n1 + n2 <= 2 * l - 4 && n1 <= l - 2) || (n1 + n2 <= 2 * l - 4 && n2 + n3 <= l - 3))
}

/// `K2 + H` avoids `C_{3,3}` iff `H` is edgeless, or the join has fewer than
/// the five vertices a bowtie needs.
pub fn c33_free_predicate(p: &PathPartition) -> bool {
    p.nth(1) <= 1 || p.total() + 2 < 5
}

/// `K2 + H` avoids every Theta graph on `k >= 5` vertices iff `n1 + n2 <= k - 3`.
pub fn claim8_free_predicate(p: &PathPartition, k: usize) -> Result<bool> {
    if k < 5 {
        return Err(SpexError::InvalidParameter(format!(
            "Theta_k predicate needs k >= 5, got {k}"
        )));
    }
    Ok(p.nth(1) + p.nth(2) <= k - 3)
}

/// Freeness of `K2 + realize(p)`: closed-form predicate where one exists,
/// embedding search otherwise.
pub fn join_is_free(p: &PathPartition, pattern: &ForbiddenPattern) -> Result<bool> {
    pattern.validate()?;
    match *pattern {
        ForbiddenPattern::Cll(3) => Ok(c33_free_predicate(p)),
        ForbiddenPattern::Cll(l) => claim4_free_predicate(p, l),
        ForbiddenPattern::Theta(k) if k >= 5 => claim8_free_predicate(p, k),
        _ => is_free(&join_k2(&realize_partition(p))?, pattern),
    }
}

/// `K2 + H` structure: an adjacent dominating pair over a union of paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinDecomposition {
    pub dominating_pair: [usize; 2],
    pub partition: PathPartition,
}

/// Path orders of `g` when it is a disjoint union of paths.
fn path_orders(g: &Graph) -> Option<Vec<usize>> {
    if g.degrees().iter().any(|&d| d > 2) {
        return None;
    }
    let mut orders = Vec::new();
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.deg(v)).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return None;
        }
        orders.push(comp.len());
    }
    Some(orders)
}

/// Lexicographically smallest adjacent pair dominating all other vertices such
/// that the remaining vertices induce a union of paths.
pub fn decompose_join(g: &Graph) -> Option<JoinDecomposition> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let dominating: Vec<usize> = (0..n).filter(|&v| g.deg(v) == n - 1).collect();
    for (i, &a) in dominating.iter().enumerate() {
        for &b in &dominating[i + 1..] {
            let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
            if let Some(orders) = path_orders(&g.induced(&rest)) {
                let partition = PathPartition::new(orders).expect("orders are positive");
                return Some(JoinDecomposition {
                    dominating_pair: [a, b],
                    partition,
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `C_{l,l}`, `l >= 4`.
    Claim4,
    /// `Theta_k`, `k >= 5`.
    Claim8,
    /// `C_{3,3}`.
    C33,
}

impl FromStr for Claim {
    type Err = SpexError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "4" | "claim4" => Ok(Claim::Claim4),
            "8" | "claim8" => Ok(Claim::Claim8),
            "c33" => Ok(Claim::C33),
            _ => Err(SpexError::InvalidParameter(format!(
                "unknown claim {s:?}: expected 4, 8 or c33"
            ))),
        }
    }
}

impl Claim {
    pub fn pattern(self, param: usize) -> Result<ForbiddenPattern> {
        match self {
            Claim::Claim4 if param >= 4 => Ok(ForbiddenPattern::Cll(param)),
            Claim::Claim8 if param >= 5 => Ok(ForbiddenPattern::Theta(param)),
            Claim::C33 if param == 3 => Ok(ForbiddenPattern::Cll(3)),
            _ => Err(SpexError::InvalidParameter(format!(
                "parameter {param} not valid for {self:?}"
            ))),
        }
    }

    pub fn predicate(self, p: &PathPartition, param: usize) -> Result<bool> {
        match self {
            Claim::Claim4 => claim4_free_predicate(p, param),
            Claim::Claim8 => claim8_free_predicate(p, param),
            Claim::C33 => {
                self.pattern(param)?;
                Ok(c33_free_predicate(p))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub partition: PathPartition,
    pub predicate_free: bool,
    pub oracle_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub claim: Claim,
    pub param: usize,
    pub max_total: usize,
    pub checked: usize,
    pub free_count: usize,
    /// Disagreements in lexicographic order of the partitions.
    pub mismatches: Vec<Mismatch>,
}

/// Compares a closed-form predicate with the embedding search on `K2 + H` for
/// every path partition of total `1..=max_total`.
pub fn oracle_agreement(claim: Claim, param: usize, max_total: usize) -> Result<AgreementReport> {
    let pattern = claim.pattern(param)?;
    let partitions: Vec<PathPartition> = (1..=max_total)
        .flat_map(|t| enumerate_partitions(t, None))
        .collect();
    let outcomes = partitions
        .par_iter()
        .map(|p| {
            let predicate_free = claim.predicate(p, param)?;
            let oracle_free = is_free(&join_k2(&realize_partition(p))?, &pattern)?;
            Ok((p.clone(), predicate_free, oracle_free))
        })
        .collect::<Result<Vec<_>>>()?;
    let free_count = outcomes.iter().filter(|o| o.2).count();
    let mut mismatches: Vec<Mismatch> = outcomes
        .into_iter()
        .filter(|(_, a, b)| a != b)
        .map(|(partition, predicate_free, oracle_free)| Mismatch {
            partition,
            predicate_free,
            oracle_free,
        })
        .collect();
    mismatches.sort_by(|a, b| a.partition.parts().cmp(b.partition.parts()));
    Ok(AgreementReport {
        claim,
        param,
        max_total,
        checked: partitions.len(),
        free_count,
        mismatches,
    })
}
