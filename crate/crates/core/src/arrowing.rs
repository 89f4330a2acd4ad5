//! Arrowing deciders for `F -> (tK2, H)`, coloring certificates, and the
//! disjoint-union composition rule.
//!
//! Three routes decide arrowing. The generic route is a complete search over
//! red edge sets with matching number below `t`, restricted to
//! inclusion-maximal candidates: moving an edge from blue to red never helps
//! blue avoid `H`, so if any good coloring exists a maximal-red one does.
//! The `t = 2` route checks that `H` survives every single-vertex deletion
//! and every triangle edge-deletion, because a red set without two disjoint
//! edges is a sub-star or a sub-triangle. The `t = 3` route, valid on hosts
//! with no cycle of length five or less, checks every two-vertex deletion,
//! because a red set without three disjoint edges and without short cycles
//! is covered by two stars. Every negative verdict carries a coloring that
//! re-verifies independently.

use crate::graph::{bit, set_bits, Graph, GraphError, Girth};
use crate::graph6::{decode_graph6, encode_graph6, Graph6Error};
use crate::patterns::{contains, max_matching_size, Pattern, PatternError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge budget above which the generic search refuses to run.
pub const DEFAULT_GENERIC_EDGE_BUDGET: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrowError {
    #[error("host has {edges} edges, over the generic search budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error("host has girth {girth}; the 3K2 characterization needs girth >= 6 (use the generic decider)")]
    GirthTooSmall { girth: usize },
    #[error("no deletion characterization for t = {t}; use the generic decider")]
    NoLemma { t: usize },
    #[error("red edge ({0}, {1}) is not an edge of the host", edge.0, edge.1)]
    RedEdgeNotInHost { edge: (usize, usize) },
    #[error("coloring host does not match the queried graph")]
    HostMismatch,
    #[error("adversary coloring requires a connected host")]
    Disconnected,
    #[error("adversary coloring requires e(F) <= {budget}, host has {edges} edges")]
    SizeOverBudget { edges: usize, budget: usize },
    #[error("adversary coloring failed verification; hypotheses violated")]
    AdversaryInvalid,
    #[error("union composition needs at least one part")]
    NoParts,
    #[error("part {index} does not arrow; composition is unsound")]
    PartNotArrowing { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which decision procedure produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    Generic,
    Lemma2K2,
    Lemma3K2,
    Composed,
}

/// Method selection for [`arrows`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Generic,
    Lemma,
}

/// A red edge subset of a host graph; blue is the complement within the
/// host's edges. The red list is kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    host: Graph,
    red: Vec<(u8, u8)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringVerdict {
    Valid,
    RedViolation,
    BlueViolation,
}

impl Coloring {
    /// Builds a coloring, validating that every red edge lies in the host.
    pub fn new(host: Graph, red: &[(usize, usize)]) -> Result<Coloring, ArrowError> {
        let mut edges: Vec<(u8, u8)> = Vec::with_capacity(red.len());
        for &(u, v) in red {
            if u >= host.order() || v >= host.order() || u == v || !host.has_edge(u, v) {
                return Err(ArrowError::RedEdgeNotInHost { edge: (u, v) });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a as u8, b as u8));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Coloring { host, red: edges })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        self.red.iter().map(|&(u, v)| (u as usize, v as usize)).collect()
    }

    /// Red subgraph on the host's vertex set.
    pub fn red_graph(&self) -> Graph {
        let mut g = Graph::empty(self.host.order()).expect("host order within cap");
        for &(u, v) in &self.red {
            g = g.add_edge(u as usize, v as usize).expect("validated edge");
        }
        g
    }

    /// Blue subgraph: the host minus the red edges, all vertices kept.
    pub fn blue_graph(&self) -> Graph {
        self.red
            .iter()
            .fold(self.host, |g, &(u, v)| g.remove_edge(u as usize, v as usize))
    }
}

/// Deletion witness attached to a negative lemma verdict: the vertex, pair,
/// or triangle whose removal leaves no copy of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DeletionTrace {
    Vertex(usize),
    Pair(usize, usize),
    Triangle([usize; 3]),
}

/// Outcome of an arrowing query: the decision, the method that produced it,
/// and, for negative verdicts, a verifiable coloring certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowVerdict {
    pub arrows: bool,
    pub method: Method,
    pub certificate: Option<Coloring>,
    pub trace: Option<DeletionTrace>,
}

impl ArrowVerdict {
    fn positive(method: Method) -> ArrowVerdict {
        ArrowVerdict { arrows: true, method, certificate: None, trace: None }
    }

    fn negative(method: Method, certificate: Coloring, trace: Option<DeletionTrace>) -> ArrowVerdict {
        ArrowVerdict { arrows: false, method, certificate: Some(certificate), trace }
    }
}

/// Checks a coloring against the query `(tK2, h)`: valid exactly when the
/// red subgraph has no `t` disjoint edges and the blue subgraph has no `h`.
/// A red violation is reported before a blue one.
pub fn verify_coloring(
    f: &Graph,
    t: usize,
    h: &Pattern,
    c: &Coloring,
) -> Result<ColoringVerdict, ArrowError> {
    if c.host != *f {
        return Err(ArrowError::HostMismatch);
    }
    if max_matching_size(&c.red_graph()) >= t {
        return Ok(ColoringVerdict::RedViolation);
    }
    if contains(&c.blue_graph(), h) {
        return Ok(ColoringVerdict::BlueViolation);
    }
    Ok(ColoringVerdict::Valid)
}

/// Complete coloring search with the default edge budget.
pub fn arrows_generic(f: &Graph, t: usize, h: &Pattern) -> Result<ArrowVerdict, ArrowError> {
    arrows_generic_with_budget(f, t, h, DEFAULT_GENERIC_EDGE_BUDGET)
}

/// Complete coloring search: arrows exactly when no `(tK2, h)`-coloring
/// exists. On a negative verdict the certificate is the first good coloring
/// found under a fixed deterministic edge order.
pub fn arrows_generic_with_budget(
    f: &Graph,
    t: usize,
    h: &Pattern,
    budget: usize,
) -> Result<ArrowVerdict, ArrowError> {
    if f.edge_count() > budget {
        return Err(ArrowError::BudgetExceeded { edges: f.edge_count(), budget });
    }
    if t == 0 {
        // an empty red matching is present in every coloring
        return Ok(ArrowVerdict::positive(Method::Generic));
    }
    let mut edges = f.edges();
    // fail fast on dense cores: highest degree-sum endpoints first
    edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(f.degree(u) + f.degree(v)), u, v));
    let blue = Graph::empty(f.order()).expect("order within cap");
    let red = blue;
    let mut found: Option<Vec<(usize, usize)>> = None;
    search_colorings(t, h, &edges, 0, red, blue, &mut found);
    match found {
        Some(red_edges) => {
            let cert = Coloring::new(*f, &red_edges)?;
            debug_assert_eq!(verify_coloring(f, t, h, &cert), Ok(ColoringVerdict::Valid));
            Ok(ArrowVerdict::negative(Method::Generic, cert, None))
        }
        None => Ok(ArrowVerdict::positive(Method::Generic)),
    }
}

fn search_colorings(
    t: usize,
    h: &Pattern,
    edges: &[(usize, usize)],
    idx: usize,
    red: Graph,
    blue: Graph,
    found: &mut Option<Vec<(usize, usize)>>,
) {
    if found.is_some() {
        return;
    }
    if idx == edges.len() {
        // keep only inclusion-maximal red sets: every blue edge must be
        // unaddable without creating a red tK2
        for &(u, v) in edges {
            if !red.has_edge(u, v) {
                let extended = red.add_edge(u, v).expect("edge of host");
                if max_matching_size(&extended) < t {
                    return;
                }
            }
        }
        *found = Some(red.edges());
        return;
    }
    let (u, v) = edges[idx];
    let red_ext = red.add_edge(u, v).expect("edge of host");
    if max_matching_size(&red_ext) < t {
        search_colorings(t, h, edges, idx + 1, red_ext, blue, found);
    }
    if found.is_some() {
        return;
    }
    let blue_ext = blue.add_edge(u, v).expect("edge of host");
    if !contains(&blue_ext, h) {
        search_colorings(t, h, edges, idx + 1, red, blue_ext, found);
    }
}

/// Red star at a vertex: all incident edges.
fn star_edges(f: &Graph, v: usize) -> Vec<(usize, usize)> {
    set_bits(f.neighbors(v)).map(|w| (v.min(w), v.max(w))).collect()
}

/// All edges meeting a vertex set.
fn edges_meeting(f: &Graph, s: u64) -> Vec<(usize, usize)> {
    f.edges()
        .into_iter()
        .filter(|&(u, v)| s & bit(u) != 0 || s & bit(v) != 0)
        .collect()
}

fn trivial_verdict_for_edgeless_target(f: &Graph, h: &Pattern, method: Method) -> ArrowVerdict {
    // blue always spans every host vertex, so an edgeless target is present
    // exactly when the host has enough vertices
    if f.order() >= h.vertex_count() {
        ArrowVerdict::positive(method)
    } else {
        let cert = Coloring::new(*f, &[]).expect("empty red set");
        ArrowVerdict::negative(method, cert, None)
    }
}

/// Decides `F -> (2K2, h)` by the star/triangle characterization: arrows
/// exactly when `h` survives every single-vertex deletion and the deletion
/// of every triangle's edges. A failed condition yields the corresponding
/// coloring: the star at the vertex, or the triangle itself, colored red.
pub fn arrows_2k2_lemma(f: &Graph, h: &Pattern) -> ArrowVerdict {
    let method = Method::Lemma2K2;
    if !h.has_edges() {
        return trivial_verdict_for_edgeless_target(f, h, method);
    }
    if f.order() == 0 {
        let cert = Coloring::new(*f, &[]).expect("empty red set");
        return ArrowVerdict::negative(method, cert, None);
    }
    for tri in f.triangles() {
        let [a, b, c] = tri;
        let tri_edges = [(a, b), (a, c), (b, c)];
        let blue = f.remove_edge_list(&tri_edges);
        if !contains(&blue, h) {
            let cert = Coloring::new(*f, &tri_edges).expect("triangle edges in host");
            return ArrowVerdict::negative(method, cert, Some(DeletionTrace::Triangle(tri)));
        }
    }
    for v in 0..f.order() {
        let blue = f.remove_edges_at(bit(v));
        if !contains(&blue, h) {
            let cert = Coloring::new(*f, &star_edges(f, v)).expect("star edges in host");
            return ArrowVerdict::negative(method, cert, Some(DeletionTrace::Vertex(v)));
        }
    }
    ArrowVerdict::positive(method)
}

/// Decides `F -> (3K2, h)` on hosts without cycles of length five or less:
/// arrows exactly when `h` survives the deletion of every pair of distinct
/// vertices. The precondition is an error, not a silent fallback.
pub fn arrows_3k2_lemma(f: &Graph, h: &Pattern) -> Result<ArrowVerdict, ArrowError> {
    if let Girth::Length(l) = f.girth() {
        if l <= 5 {
            return Err(ArrowError::GirthTooSmall { girth: l });
        }
    }
    let method = Method::Lemma3K2;
    if !h.has_edges() {
        return Ok(trivial_verdict_for_edgeless_target(f, h, method));
    }
    if f.edge_count() == 0 {
        // no red candidates at all: arrowing reduces to containment
        return Ok(if contains(f, h) {
            ArrowVerdict::positive(method)
        } else {
            let cert = Coloring::new(*f, &[]).expect("empty red set");
            ArrowVerdict::negative(method, cert, None)
        });
    }
    for u in 0..f.order() {
        for v in (u + 1)..f.order() {
            let pair = bit(u) | bit(v);
            let blue = f.remove_edges_at(pair);
            if !contains(&blue, h) {
                let cert = Coloring::new(*f, &edges_meeting(f, pair)).expect("edges in host");
                return Ok(ArrowVerdict::negative(method, cert, Some(DeletionTrace::Pair(u, v))));
            }
        }
    }
    Ok(ArrowVerdict::positive(method))
}

/// Dispatching decider. `Auto` picks the star-cover characterization for
/// `t = 2`, the pair-deletion characterization for `t = 3` on hosts of girth
/// at least 6, and the generic search otherwise.
pub fn arrows(f: &Graph, t: usize, h: &Pattern, choice: MethodChoice) -> Result<ArrowVerdict, ArrowError> {
    match choice {
        MethodChoice::Auto => match t {
            2 => Ok(arrows_2k2_lemma(f, h)),
            3 if f.girth().at_least(6) => arrows_3k2_lemma(f, h),
            _ => arrows_generic(f, t, h),
        },
        MethodChoice::Generic => arrows_generic(f, t, h),
        MethodChoice::Lemma => match t {
            2 => Ok(arrows_2k2_lemma(f, h)),
            3 => arrows_3k2_lemma(f, h),
            _ => Err(ArrowError::NoLemma { t }),
        },
    }
}

/// The red-star adversary coloring for connected hosts of size at most
/// `n * m` against the target `nPm`: pick `u` adjacent to a leaf when the
/// host is a tree, otherwise `u` on a cycle, and color every edge at `u`
/// red. The returned coloring is verified before it is returned.
pub fn adversarial_coloring_connected(
    f: &Graph,
    n: usize,
    m: usize,
) -> Result<Coloring, ArrowError> {
    if !f.is_connected() || f.order() == 0 {
        return Err(ArrowError::Disconnected);
    }
    if f.edge_count() > n * m {
        return Err(ArrowError::SizeOverBudget { edges: f.edge_count(), budget: n * m });
    }
    let is_tree = f.edge_count() + 1 == f.order();
    let u = if is_tree {
        // lowest vertex adjacent to a leaf; a one-vertex tree has none
        (0..f.order())
            .find(|&v| set_bits(f.neighbors(v)).any(|w| f.degree(w) == 1))
            .unwrap_or(0)
    } else {
        (0..f.order())
            .find(|&v| lies_on_cycle(f, v))
            .expect("a connected non-tree has a cycle")
    };
    let coloring = Coloring::new(*f, &star_edges(f, u))?;
    let target = Pattern::path_union(n, m).expect("n, m >= 1");
    match verify_coloring(f, 2, &target, &coloring)? {
        ColoringVerdict::Valid => Ok(coloring),
        _ => Err(ArrowError::AdversaryInvalid),
    }
}

/// True when `v` lies on some cycle: two of its neighbors are connected in
/// `f - v`.
fn lies_on_cycle(f: &Graph, v: usize) -> bool {
    let nb = f.neighbors(v);
    if nb.count_ones() < 2 {
        return false;
    }
    let rest = f.vertex_mask() & !bit(v);
    let mut pending = nb;
    while pending != 0 {
        let a = pending.trailing_zeros() as usize;
        let reach = f.reachable_from(a, rest);
        if reach & nb & !bit(a) != 0 {
            return true;
        }
        pending &= !reach;
    }
    false
}

/// Result of composing verified arrowing parts into a disjoint union.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedArrowing {
    pub graph: Graph,
    pub t: usize,
    pub verdict: ArrowVerdict,
}

/// Disjoint-union composition: parts arrowing `(t_i K2, h)` yield a union
/// arrowing `(sum t_i K2, h)`. Inference, not search: the verdict carries no
/// certificate.
pub fn compose_union_arrowing(
    parts: &[(Graph, usize, ArrowVerdict)],
) -> Result<ComposedArrowing, ArrowError> {
    if parts.is_empty() {
        return Err(ArrowError::NoParts);
    }
    for (index, (_, _, verdict)) in parts.iter().enumerate() {
        if !verdict.arrows {
            return Err(ArrowError::PartNotArrowing { index });
        }
    }
    let mut graph = parts[0].0;
    for (g, _, _) in &parts[1..] {
        graph = graph.disjoint_union(g)?;
    }
    let t = parts.iter().map(|&(_, t, _)| t).sum();
    Ok(ComposedArrowing { graph, t, verdict: ArrowVerdict::positive(Method::Composed) })
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
}

/// On-disk certificate: a host, a query, and a red edge list that together
/// re-verify with no other context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub host: String,
    pub t: usize,
    pub pattern: String,
    pub red: Vec<(usize, usize)>,
}

impl CertificateFile {
    pub fn new(t: usize, h: &Pattern, coloring: &Coloring) -> CertificateFile {
        CertificateFile {
            host: encode_graph6(coloring.host()),
            t,
            pattern: h.to_string(),
            red: coloring.red_edges(),
        }
    }

    /// Decodes and re-checks the certificate from its serialized fields.
    pub fn verify(&self) -> Result<ColoringVerdict, CertificateError> {
        let host = decode_graph6(&self.host)?;
        let pattern: Pattern = self.pattern.parse()?;
        let coloring = Coloring::new(host, &self.red)?;
        Ok(verify_coloring(&host, self.t, &pattern, &coloring)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn verify_coloring_examples() {
        let k3 = Graph::cycle(3).unwrap();
        let all_red = Coloring::new(k3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(verify_coloring(&k3, 2, &pat("P3"), &all_red).unwrap(), ColoringVerdict::Valid);

        let c7 = Graph::cycle(7).unwrap();
        let star = Coloring::new(c7, &[(0, 1), (0, 6)]).unwrap();
        assert_eq!(
            verify_coloring(&c7, 2, &pat("P6"), &star).unwrap(),
            ColoringVerdict::BlueViolation
        );

        let c4 = Graph::cycle(4).unwrap();
        let disjoint = Coloring::new(c4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            verify_coloring(&c4, 2, &pat("P3"), &disjoint).unwrap(),
            ColoringVerdict::RedViolation
        );
    }

    #[test]
    fn coloring_rejects_foreign_edges() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(
            Coloring::new(c4, &[(0, 2)]),
            Err(ArrowError::RedEdgeNotInHost { edge: (0, 2) })
        ));
    }

    #[test]
    fn generic_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(arrows_generic(&c4, 2, &pat("P3")).unwrap().arrows);

        let k3 = Graph::cycle(3).unwrap();
        let verdict = arrows_generic(&k3, 2, &pat("P3")).unwrap();
        assert!(!verdict.arrows);
        let cert = verdict.certificate.unwrap();
        assert_eq!(cert.red_edges().len(), 3); // all of K3 red
        assert_eq!(verify_coloring(&k3, 2, &pat("P3"), &cert).unwrap(), ColoringVerdict::Valid);

        let p4 = Graph::path(4).unwrap();
        let verdict = arrows_generic(&p4, 2, &pat("P3")).unwrap();
        assert!(!verdict.arrows);
        assert!(!reference::arrows_naive(&p4, 2, &pat("P3")));
    }

    #[test]
    fn generic_budget_refusal() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(
            arrows_generic_with_budget(&c4, 2, &pat("P3"), 3),
            Err(ArrowError::BudgetExceeded { edges: 4, budget: 3 })
        ));
    }

    #[test]
    fn lemma_2k2_examples() {
        // C7 arrows (2K2, 2P3)
        let c7 = Graph::cycle(7).unwrap();
        assert!(arrows_2k2_lemma(&c7, &pat("2P3")).arrows);

        // 3P4 arrows (2K2, 2P4)
        let g = Graph::path_union(3, 4).unwrap();
        assert!(arrows_2k2_lemma(&g, &pat("2P4")).arrows);

        // K3 fails: deleting the triangle's edges leaves nothing
        let k3 = Graph::cycle(3).unwrap();
        let verdict = arrows_2k2_lemma(&k3, &pat("P3"));
        assert!(!verdict.arrows);
        assert_eq!(verdict.trace, Some(DeletionTrace::Triangle([0, 1, 2])));
        let cert = verdict.certificate.unwrap();
        assert_eq!(verify_coloring(&k3, 2, &pat("P3"), &cert).unwrap(), ColoringVerdict::Valid);
    }

    #[test]
    fn lemma_2k2_triangle_condition_deletes_edges_not_vertices() {
        // triangle {0,1,2} with pendants 1-3, 2-4 and the edge 3-4: deleting
        // the triangle's three vertices kills every P3, but deleting only its
        // edges leaves the path 1-3-4-2, so the graph arrows
        let f = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let lemma = arrows_2k2_lemma(&f, &pat("P3"));
        let generic = arrows_generic(&f, 2, &pat("P3")).unwrap();
        assert!(lemma.arrows);
        assert!(generic.arrows);
        assert!(reference::arrows_naive(&f, 2, &pat("P3")));
    }

    #[test]
    fn lemma_3k2_examples() {
        let c10 = Graph::cycle(10).unwrap();
        assert!(arrows_3k2_lemma(&c10, &pat("P3")).unwrap().arrows);

        let c8 = Graph::cycle(8).unwrap();
        let verdict = arrows_3k2_lemma(&c8, &pat("P7")).unwrap();
        assert!(!verdict.arrows);
        assert!(matches!(verdict.trace, Some(DeletionTrace::Pair(_, _))));
        let cert = verdict.certificate.unwrap();
        assert_eq!(verify_coloring(&c8, 3, &pat("P7"), &cert).unwrap(), ColoringVerdict::Valid);

        // short cycles are a precondition error
        assert!(matches!(
            arrows_3k2_lemma(&Graph::cycle(5).unwrap(), &pat("P3")),
            Err(ArrowError::GirthTooSmall { girth: 5 })
        ));
        // forests pass the precondition
        assert!(arrows_3k2_lemma(&Graph::path(7).unwrap(), &pat("P3")).is_ok());
    }

    #[test]
    fn dispatch_examples() {
        let c7 = Graph::cycle(7).unwrap();
        let v = arrows(&c7, 2, &pat("2P3"), MethodChoice::Auto).unwrap();
        assert!(v.arrows);
        assert_eq!(v.method, Method::Lemma2K2);

        let c10 = Graph::cycle(10).unwrap();
        let v = arrows(&c10, 3, &pat("P3"), MethodChoice::Auto).unwrap();
        assert_eq!(v.method, Method::Lemma3K2);

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let v = arrows(&k4, 3, &pat("P3"), MethodChoice::Auto).unwrap();
        assert_eq!(v.method, Method::Generic);

        assert!(matches!(
            arrows(&c7, 4, &pat("P3"), MethodChoice::Lemma),
            Err(ArrowError::NoLemma { t: 4 })
        ));
    }

    #[test]
    fn adversary_coloring_examples() {
        // K3 against 1P3 with budget 3
        let k3 = Graph::cycle(3).unwrap();
        let c = adversarial_coloring_connected(&k3, 1, 3).unwrap();
        assert_eq!(c.red_edges().len(), 2);

        // P4 against 1P3: u is adjacent to a leaf
        let p4 = Graph::path(4).unwrap();
        let c = adversarial_coloring_connected(&p4, 1, 3).unwrap();
        assert_eq!(c.red_edges(), vec![(0, 1), (1, 2)]);

        // hypothesis violations
        let two = Graph::matching(2).unwrap();
        assert!(matches!(
            adversarial_coloring_connected(&two, 2, 3),
            Err(ArrowError::Disconnected)
        ));
        let c7 = Graph::cycle(7).unwrap();
        assert!(matches!(
            adversarial_coloring_connected(&c7, 2, 3),
            Err(ArrowError::SizeOverBudget { edges: 7, budget: 6 })
        ));
    }

    #[test]
    fn adversary_coloring_random_connected_hosts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xadd);
        for &(n, m) in &[(2usize, 3usize), (2, 4), (3, 3)] {
            let edges = n * m;
            // smallest order whose complete graph holds `edges` edges
            let min_order = (2..).find(|&o| o * (o - 1) / 2 >= edges).unwrap();
            for _ in 0..60 {
                let order = rng.random_range(min_order..=edges + 1);
                // random spanning tree, then random extra edges up to the size
                let mut g = Graph::empty(order).unwrap();
                for v in 1..order {
                    let u = rng.random_range(0..v);
                    g = g.add_edge(u, v).unwrap();
                }
                while g.edge_count() < edges {
                    let u = rng.random_range(0..order);
                    let v = rng.random_range(0..order);
                    if u != v {
                        g = g.add_edge(u, v).unwrap();
                    }
                }
                let c = adversarial_coloring_connected(&g, n, m).unwrap();
                let target = Pattern::path_union(n, m).unwrap();
                assert_eq!(
                    verify_coloring(&g, 2, &target, &c).unwrap(),
                    ColoringVerdict::Valid
                );
            }
        }
    }

    #[test]
    fn compose_union_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let v = arrows(&c4, 2, &pat("P3"), MethodChoice::Auto).unwrap();
        let composed =
            compose_union_arrowing(&[(c4, 2, v.clone()), (c4, 2, v.clone())]).unwrap();
        assert_eq!(composed.t, 4);
        assert_eq!(composed.graph.edge_count(), 8);
        assert!(composed.verdict.arrows);
        assert_eq!(composed.verdict.method, Method::Composed);
        // confirmed by the generic search on the union
        assert!(arrows_generic(&composed.graph, 4, &pat("P3")).unwrap().arrows);

        let single = compose_union_arrowing(&[(c4, 2, v)]).unwrap();
        assert_eq!(single.graph, c4);
        assert_eq!(single.t, 2);

        let p4 = Graph::path(4).unwrap();
        let bad = arrows(&p4, 2, &pat("P3"), MethodChoice::Auto).unwrap();
        assert!(matches!(
            compose_union_arrowing(&[(p4, 2, bad)]),
            Err(ArrowError::PartNotArrowing { index: 0 })
        ));
    }

    #[test]
    fn lemma_matches_generic_on_small_hosts() {
        let hs = [pat("P3"), pat("P4"), pat("C3"), pat("C4"), pat("2P3"), pat("M2")];
        for e in 0..=5 {
            for f in reference::enumerate_classes(e) {
                for h in &hs {
                    let lemma = arrows_2k2_lemma(&f, h);
                    let generic = arrows_generic(&f, 2, h).unwrap();
                    assert_eq!(lemma.arrows, generic.arrows, "host {f:?}, target {h}");
                    assert_eq!(lemma.arrows, reference::arrows_naive(&f, 2, h));
                    for v in [lemma, generic] {
                        if let Some(cert) = v.certificate {
                            assert_eq!(
                                verify_coloring(&f, 2, h, &cert).unwrap(),
                                ColoringVerdict::Valid
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_under_supergraphs() {
        // adding edges preserves arrowing, spot-checked around C4 / P3
        let c4 = Graph::cycle(4).unwrap();
        assert!(arrows_generic(&c4, 2, &pat("P3")).unwrap().arrows);
        let with_chord = c4.add_edge(0, 2).unwrap();
        assert!(arrows_generic(&with_chord, 2, &pat("P3")).unwrap().arrows);
        let with_extra = c4.grow(1).unwrap().add_edge(0, 4).unwrap();
        assert!(arrows_generic(&with_extra, 2, &pat("P3")).unwrap().arrows);
    }

    #[test]
    fn certificate_file_roundtrip() {
        let k3 = Graph::cycle(3).unwrap();
        let verdict = arrows_generic(&k3, 2, &pat("P3")).unwrap();
        let cert = CertificateFile::new(2, &pat("P3"), verdict.certificate.as_ref().unwrap());
        let json = serde_json::to_string(&cert).unwrap();
        let back: CertificateFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.verify().unwrap(), ColoringVerdict::Valid);
    }

    #[test]
    fn edgeless_targets_reduce_to_order_counts() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(arrows_2k2_lemma(&k2, &pat("P1")).arrows);
        assert!(arrows_2k2_lemma(&k2, &pat("2P1")).arrows);
        assert!(!arrows_2k2_lemma(&k2, &pat("3P1")).arrows);
        let empty = Graph::empty(0).unwrap();
        assert!(!arrows_2k2_lemma(&empty, &pat("P3")).arrows);
    }
}
