//! Builders for the graph families that appear in the extremal results, and
//! the path-partition moves used to compare them.
//!
//! Labelling convention: path vertices are laid out consecutively, one part
//! after another in non-increasing order, and the two dominating vertices of a
//! join `K2 + H` take the two highest ids.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpexError};
use crate::graph::Graph;
use crate::patterns::ForbiddenPattern;

/// Orders of the paths in a disjoint union of paths, non-increasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PathPartition(Vec<usize>);

impl PathPartition {
    /// Sorts `parts` non-increasingly; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(SpexError::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PathPartition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th largest part (1-based), zero when absent.
    pub fn nth(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|k| self.0.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.total() - self.len()
    }

    /// Parses `"3,2,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| SpexError::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PathPartition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for PathPartition {
    type Error = SpexError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        PathPartition::new(v)
    }
}

impl From<PathPartition> for Vec<usize> {
    fn from(p: PathPartition) -> Self {
        p.0
    }
}

impl fmt::Debug for PathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for PathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

pub fn path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(SpexError::InvalidParameter(
            "path order must be >= 1".into(),
        ));
    }
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_edges(k, &edges)
}

pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(SpexError::InvalidParameter(format!(
            "cycle order must be >= 3, got {k}"
        )));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edges(k, &edges)
}

/// Path orders of `H(n1, n2)` on `n - 2` vertices: one `P_{n1}`, as many
/// `P_{n2}` as fit, then the remainder path if any.
pub fn h_partition(n: usize, n1: usize, n2: usize) -> Result<PathPartition> {
    let rest = n.saturating_sub(2);
    if n < 2 || rest < n1 {
        return Err(SpexError::InvalidParameter(format!(
            "H({n1},{n2}) needs n - 2 >= n1, got n = {n}"
        )));
    }
    if n2 < 1 || n2 > n1 {
        return Err(SpexError::InvalidParameter(format!(
            "H({n1},{n2}) needs n1 >= n2 >= 1"
        )));
    }
    let left = rest - n1;
    let mut parts = vec![n1];
    parts.extend(std::iter::repeat_n(n2, left / n2));
    if !left.is_multiple_of(n2) {
        parts.push(left % n2);
    }
    PathPartition::new(parts)
}

pub fn realize_partition(p: &PathPartition) -> Graph {
    let mut g = Graph::new(p.total());
    let mut base = 0;
    for &len in p.parts() {
        for i in 1..len {
            g.add_edge(base + i - 1, base + i).expect("in range");
        }
        base += len;
    }
    g
}

/// `K2 + h`: two adjacent vertices `u'`, `u''` (ids `n` and `n + 1`) joined to
/// every vertex of `h`.
pub fn join_k2(h: &Graph) -> Result<Graph> {
    let n = h.n();
    if n == 0 {
        return Err(SpexError::EmptyGraph);
    }
    let mut g = h.disjoint_union(&Graph::new(2));
    let (a, b) = (n, n + 1);
    g.add_edge(a, b)?;
    for v in 0..n {
        g.add_edge(a, v)?;
        g.add_edge(b, v)?;
    }
    Ok(g)
}

/// `K_{2,n-2}` with the large side on ids `0..n-2`.
pub fn k2_bipartite(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(SpexError::InvalidParameter(format!(
            "K_(2,n-2) needs n >= 3, got {n}"
        )));
    }
    let mut g = Graph::new(n);
    for v in 0..n - 2 {
        g.add_edge(v, n - 2)?;
        g.add_edge(v, n - 1)?;
    }
    Ok(g)
}

/// `K_{2,n-2}` plus the edge `{0, 1}` inside the large side.
pub fn k2_plus(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(SpexError::InvalidParameter(format!(
            "K+_(2,n-2) needs n >= 4, got {n}"
        )));
    }
    let mut g = k2_bipartite(n)?;
    g.add_edge(0, 1)?;
    Ok(g)
}

/// Two `l`-cycles sharing exactly vertex 0.
pub fn cll_pattern(l: usize) -> Result<Graph> {
    if l < 3 {
        return Err(SpexError::InvalidParameter(format!(
            "C_(l,l) needs l >= 3, got {l}"
        )));
    }
    let mut g = Graph::new(2 * l - 1);
    for start in [0, l - 1] {
        let ring: Vec<usize> = std::iter::once(0).chain(start + 1..start + l).collect();
        for i in 0..l {
            g.add_edge(ring[i], ring[(i + 1) % l])?;
        }
    }
    Ok(g)
}

/// `C_a . C_b` with `a + b = k + 2`: a `k`-cycle with the chord `{0, a-1}`.
pub fn theta_member(k: usize, a: usize) -> Result<Graph> {
    if a < 3 || k + 2 < a + 3 {
        return Err(SpexError::InvalidParameter(format!(
            "C_{a}.C_(k+2-a) invalid for k = {k}"
        )));
    }
    let mut g = cycle(k)?;
    g.add_edge(0, a - 1)?;
    Ok(g)
}

/// All Theta graphs on `k` vertices: `C_a . C_{k+2-a}` for `a = 3..=k/2+1`.
pub fn theta_family(k: usize) -> Result<Vec<Graph>> {
    if k < 4 {
        return Err(SpexError::InvalidParameter(format!(
            "Theta_k needs k >= 4, got {k}"
        )));
    }
    (3..=k / 2 + 1).map(|a| theta_member(k, a)).collect()
}

/// Applies the `(s1, s2)` move: `P_{s1} + P_{s2}` becomes `P_{s1+1} + P_{s2-1}`,
/// or `P_{s1+1}` when `s2 = 1`.
pub fn transform(p: &PathPartition, s1: usize, s2: usize) -> Result<PathPartition> {
    if s2 == 0 || s2 > s1 {
        return Err(SpexError::InvalidParameter(format!(
            "transformation needs s1 >= s2 >= 1, got ({s1},{s2})"
        )));
    }
    let mut parts = p.parts().to_vec();
    let i = parts
        .iter()
        .position(|&x| x == s1)
        .ok_or_else(|| SpexError::InvalidParameter(format!("part {s1} absent from {p}")))?;
    parts.remove(i);
    let j = parts
        .iter()
        .position(|&x| x == s2)
        .ok_or_else(|| SpexError::InvalidParameter(format!("second part {s2} absent from {p}")))?;
    parts.remove(j);
    parts.push(s1 + 1);
    if s2 >= 2 {
        parts.push(s2 - 1);
    }
    PathPartition::new(parts)
}

/// The partition `H` for which `K2 + H` is the conjectured extremal graph, or
/// `None` for patterns whose extremal graph is not a join (`Theta(4)`).
pub fn extremal_partition(pattern: &ForbiddenPattern, n: usize) -> Result<Option<PathPartition>> {
    match *pattern {
        ForbiddenPattern::Cll(3) => h_partition(n, 1, 1).map(Some),
        ForbiddenPattern::Cll(l) if l >= 4 => h_partition(n, l - 2, l - 2).map(Some),
        ForbiddenPattern::Theta(4) => Ok(None),
        ForbiddenPattern::Theta(k) if k >= 5 => {
            h_partition(n, (k - 3).div_ceil(2), (k - 3) / 2).map(Some)
        }
        _ => Err(SpexError::UnsupportedPattern(pattern.to_string())),
    }
}

pub fn extremal_construction(pattern: &ForbiddenPattern, n: usize) -> Result<Graph> {
    match extremal_partition(pattern, n)? {
        Some(p) => join_k2(&realize_partition(&p)),
        None => k2_bipartite(n),
    }
}
