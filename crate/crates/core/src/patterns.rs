//! Symbolic target patterns and exact containment oracles.
//!
//! Patterns are the blue-side targets of arrowing queries: matchings `M<t>`,
//! paths `P<m>`, cycles `C<n>` (exactly n vertices), and disjoint path
//! unions `<n>P<m>`. Each oracle is an exact decision procedure: backtracking
//! with reachability pruning for paths and cycles, recursive placement for
//! path unions, and branch-and-bound with memoization for maximum matchings.

use crate::graph::{bit, set_bits, Graph, VertexSet};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("cannot parse {text:?} as a pattern (expected M<t>, P<m>, C<n>, or <n>P<m>)")]
    Syntax { text: String },
    #[error("{text:?}: parameter {value} is below the minimum {min}")]
    BelowMinimum { text: String, value: usize, min: usize },
}

/// Symbolic pattern. Construct through the checked constructors or the
/// parser; both normalize `1P<m>` to `P<m>` and `M1` to `P2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Matching(usize),
    Path(usize),
    Cycle(usize),
    PathUnion(usize, usize),
}

impl Pattern {
    pub fn matching(t: usize) -> Result<Pattern, PatternError> {
        if t < 1 {
            return Err(PatternError::BelowMinimum { text: format!("M{t}"), value: t, min: 1 });
        }
        Ok(if t == 1 { Pattern::Path(2) } else { Pattern::Matching(t) })
    }

    pub fn path(m: usize) -> Result<Pattern, PatternError> {
        if m < 1 {
            return Err(PatternError::BelowMinimum { text: format!("P{m}"), value: m, min: 1 });
        }
        Ok(Pattern::Path(m))
    }

    pub fn cycle(n: usize) -> Result<Pattern, PatternError> {
        if n < 3 {
            return Err(PatternError::BelowMinimum { text: format!("C{n}"), value: n, min: 3 });
        }
        Ok(Pattern::Cycle(n))
    }

    pub fn path_union(n: usize, m: usize) -> Result<Pattern, PatternError> {
        if n < 1 {
            return Err(PatternError::BelowMinimum { text: format!("{n}P{m}"), value: n, min: 1 });
        }
        if m < 1 {
            return Err(PatternError::BelowMinimum { text: format!("{n}P{m}"), value: m, min: 1 });
        }
        Ok(if n == 1 { Pattern::Path(m) } else { Pattern::PathUnion(n, m) })
    }

    /// Number of vertices in one copy of the pattern.
    pub fn vertex_count(&self) -> usize {
        match *self {
            Pattern::Matching(t) => 2 * t,
            Pattern::Path(m) => m,
            Pattern::Cycle(n) => n,
            Pattern::PathUnion(n, m) => n * m,
        }
    }

    /// False exactly for the degenerate edgeless patterns `P1` and `<n>P1`.
    pub fn has_edges(&self) -> bool {
        match *self {
            Pattern::Path(m) => m >= 2,
            Pattern::PathUnion(_, m) => m >= 2,
            Pattern::Matching(_) | Pattern::Cycle(_) => true,
        }
    }

    /// Path-union shape `(n, m)` when the pattern is a union of paths
    /// (a single path counts as `n = 1`).
    pub fn as_path_union(&self) -> Option<(usize, usize)> {
        match *self {
            Pattern::Path(m) => Some((1, m)),
            Pattern::PathUnion(n, m) => Some((n, m)),
            _ => None,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pattern::Matching(t) => write!(f, "M{t}"),
            Pattern::Path(m) => write!(f, "P{m}"),
            Pattern::Cycle(n) => write!(f, "C{n}"),
            Pattern::PathUnion(n, m) => write!(f, "{n}P{m}"),
        }
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Pattern, PatternError> {
        let syntax = || PatternError::Syntax { text: s.to_string() };
        let parse_num = |digits: &str| digits.parse::<usize>().map_err(|_| syntax());
        if let Some(rest) = s.strip_prefix('M') {
            return Pattern::matching(parse_num(rest)?);
        }
        if let Some(rest) = s.strip_prefix('P') {
            return Pattern::path(parse_num(rest)?);
        }
        if let Some(rest) = s.strip_prefix('C') {
            return Pattern::cycle(parse_num(rest)?);
        }
        if let Some((n, m)) = s.split_once('P') {
            if n.is_empty() || m.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax());
            }
            return Pattern::path_union(parse_num(n)?, parse_num(m)?);
        }
        Err(syntax())
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Pattern, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact maximum matching size, by branching on a minimum-degree vertex with
/// forced degree-1 reductions and memoization on the active vertex set.
pub fn max_matching_size(g: &Graph) -> usize {
    let mut memo: HashMap<VertexSet, u8> = HashMap::new();
    nu_rec(g, g.vertex_mask(), &mut memo)
}

fn nu_rec(g: &Graph, active: VertexSet, memo: &mut HashMap<VertexSet, u8>) -> usize {
    // vertices with no neighbor inside the active set contribute nothing
    let mut act = active;
    for v in set_bits(active) {
        if g.neighbors(v) & active == 0 {
            act &= !bit(v);
        }
    }
    if act == 0 {
        return 0;
    }
    if let Some(&cached) = memo.get(&act) {
        return cached as usize;
    }
    let (v, deg) = set_bits(act)
        .map(|v| (v, (g.neighbors(v) & act).count_ones()))
        .min_by_key(|&(_, d)| d)
        .expect("active set nonempty");
    let result = if deg == 1 {
        // a maximum matching may always be chosen to saturate a pendant edge
        let u = (g.neighbors(v) & act).trailing_zeros() as usize;
        1 + nu_rec(g, act & !bit(v) & !bit(u), memo)
    } else {
        let mut best = nu_rec(g, act & !bit(v), memo);
        for u in set_bits(g.neighbors(v) & act) {
            best = best.max(1 + nu_rec(g, act & !bit(v) & !bit(u), memo));
        }
        best
    };
    memo.insert(act, result as u8);
    result
}

/// True iff the host contains a simple path on exactly `m` vertices.
pub fn contains_path(g: &Graph, m: usize) -> bool {
    assert!(m >= 1);
    if m == 1 {
        return g.order() >= 1;
    }
    if g.order() < m {
        return false;
    }
    for comp in g.components() {
        if (comp.count_ones() as usize) < m {
            continue;
        }
        for start in set_bits(comp) {
            if path_dfs(g, start, bit(start), 1, m, comp) {
                return true;
            }
        }
    }
    false
}

fn path_dfs(g: &Graph, cur: usize, visited: VertexSet, len: usize, m: usize, comp: VertexSet) -> bool {
    if len == m {
        return true;
    }
    let avail = (comp & !visited) | bit(cur);
    if (g.reachable_from(cur, avail).count_ones() as usize) < m - len + 1 {
        return false;
    }
    for next in set_bits(g.neighbors(cur) & comp & !visited) {
        if path_dfs(g, next, visited | bit(next), len + 1, m, comp) {
            return true;
        }
    }
    false
}

/// True iff the host contains a cycle on exactly `n` vertices. A longer
/// cycle does not contain a shorter one as a subgraph, so the decision is on
/// the exact length.
pub fn contains_cycle_exact(g: &Graph, n: usize) -> bool {
    assert!(n >= 3);
    cycle_search(g, n, false)
}

/// True iff the host contains a cycle on at least `min_len` vertices.
pub fn contains_cycle_at_least(g: &Graph, min_len: usize) -> bool {
    assert!(min_len >= 3);
    cycle_search(g, min_len, true)
}

fn cycle_search(g: &Graph, len: usize, or_longer: bool) -> bool {
    if g.order() < len {
        return false;
    }
    // anchor the cycle at its minimum vertex; the rest stays above the anchor
    for anchor in 0..g.order() {
        let above: VertexSet = g.vertex_mask() & !(bit(anchor) | (bit(anchor) - 1));
        if g.neighbors(anchor) & above == 0 {
            continue;
        }
        if cycle_dfs(g, anchor, anchor, bit(anchor), 1, len, or_longer, above) {
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn cycle_dfs(
    g: &Graph,
    anchor: usize,
    cur: usize,
    visited: VertexSet,
    len: usize,
    target: usize,
    or_longer: bool,
    above: VertexSet,
) -> bool {
    if len >= 3 && g.has_edge(cur, anchor) && (len == target || (or_longer && len >= target)) {
        return true;
    }
    if !or_longer && len >= target {
        return false;
    }
    let avail = (above & !visited) | bit(cur) | bit(anchor);
    let reach = g.reachable_from(cur, avail);
    if reach & bit(anchor) == 0 {
        return false;
    }
    // remaining new vertices the cycle can still pick up
    let budget = (reach & !bit(cur) & !bit(anchor)).count_ones() as usize;
    if len + budget < target {
        return false;
    }
    for next in set_bits(g.neighbors(cur) & above & !visited) {
        if cycle_dfs(g, anchor, next, visited | bit(next), len + 1, target, or_longer, above) {
            return true;
        }
    }
    false
}

/// True iff the host contains `n` pairwise vertex-disjoint paths on exactly
/// `m` vertices each. A longer path contains `P<m>`, so placements of exact
/// length are complete.
pub fn contains_path_union(g: &Graph, n: usize, m: usize) -> bool {
    assert!(n >= 1 && m >= 1);
    if m == 1 {
        return g.order() >= n;
    }
    if n == 1 {
        return contains_path(g, m);
    }
    let mut memo: HashMap<(VertexSet, usize), bool> = HashMap::new();
    union_rec(g, g.vertex_mask(), n, m, &mut memo)
}

fn union_rec(
    g: &Graph,
    active: VertexSet,
    k: usize,
    m: usize,
    memo: &mut HashMap<(VertexSet, usize), bool>,
) -> bool {
    if k == 0 {
        return true;
    }
    if (active.count_ones() as usize) < k * m {
        return false;
    }
    if let Some(&cached) = memo.get(&(active, k)) {
        return cached;
    }
    let v = active.trailing_zeros() as usize;
    // either the lowest active vertex is unused by every remaining path, or
    // it lies on one of them
    let mut found = union_rec(g, active & !bit(v), k, m, memo);
    if !found {
        for s in m_paths_through(g, v, active, m) {
            if union_rec(g, active & !s, k - 1, m, memo) {
                found = true;
                break;
            }
        }
    }
    memo.insert((active, k), found);
    found
}

/// Vertex sets of simple paths on exactly `m` vertices inside `active` that
/// pass through `v`, deduplicated by set.
fn m_paths_through(g: &Graph, v: usize, active: VertexSet, m: usize) -> Vec<VertexSet> {
    let mut sets = std::collections::BTreeSet::new();
    for left in 0..m {
        let mut lefts = Vec::new();
        arm_walks(g, v, bit(v), left, active, &mut lefts);
        for lset in lefts {
            let mut rights = Vec::new();
            arm_walks(g, v, lset, m - 1 - left, active, &mut rights);
            sets.extend(rights);
        }
    }
    sets.into_iter().collect()
}

/// Visited sets of simple walks extending `from` by exactly `remaining` new
/// vertices. The arm may only grow from its moving endpoint.
fn arm_walks(g: &Graph, from: usize, visited: VertexSet, remaining: usize, active: VertexSet, out: &mut Vec<VertexSet>) {
    if remaining == 0 {
        out.push(visited);
        return;
    }
    for w in set_bits(g.neighbors(from) & active & !visited) {
        arm_walks(g, w, visited | bit(w), remaining - 1, active, out);
    }
}

/// Containment dispatch for the pattern's kind.
pub fn contains(g: &Graph, p: &Pattern) -> bool {
    match *p {
        Pattern::Matching(t) => max_matching_size(g) >= t,
        Pattern::Path(m) => contains_path(g, m),
        Pattern::Cycle(n) => contains_cycle_exact(g, n),
        Pattern::PathUnion(n, m) => contains_path_union(g, n, m),
    }
}
