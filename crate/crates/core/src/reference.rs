//! Slow, independent reference implementations used to cross-validate the
//! production code paths.
//!
//! Nothing here shares logic with the optimized modules: isomorphism is
//! decided by backtracking over injections, enumeration generates labeled
//! edge lists directly, containment embeds pattern graphs vertex by vertex,
//! and the arrowing oracle scans all 2^e colorings. These routines are only
//! suitable for small inputs.

use crate::graph::{bit, set_bits, Graph};
use crate::patterns::Pattern;

/// Exact isomorphism test by backtracking over degree-compatible injections.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let n = a.order();
    let mut image = vec![usize::MAX; n];
    let mut used = 0u64;
    fn assign(a: &Graph, b: &Graph, v: usize, image: &mut [usize], used: &mut u64) -> bool {
        if v == a.order() {
            return true;
        }
        for w in 0..b.order() {
            if *used & bit(w) != 0 || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(image[u], w));
            if consistent {
                image[v] = w;
                *used |= bit(w);
                if assign(a, b, v + 1, image, used) {
                    return true;
                }
                *used &= !bit(w);
                image[v] = usize::MAX;
            }
        }
        false
    }
    assign(a, b, 0, &mut image, &mut used)
}

/// Minimum packed adjacency over all vertex permutations. Only feasible for
/// tiny graphs; callers must keep the order at 8 or below.
pub fn min_code_all_perms(g: &Graph) -> Vec<u8> {
    let n = g.order();
    assert!(n <= 8, "all-permutations code is restricted to order <= 8");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    permute_all(&mut perm, 0, &mut |p| {
        let mut bits = Vec::with_capacity(n * n / 8 + 1);
        let mut acc = 0u8;
        let mut filled = 0;
        for col in 1..n {
            for row in 0..col {
                acc = (acc << 1) | u8::from(g.has_edge(p[row], p[col]));
                filled += 1;
                if filled == 8 {
                    bits.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bits.push(acc << (8 - filled));
        }
        match &best {
            Some(b) if *b <= bits => {}
            _ => best = Some(bits),
        }
    });
    let mut out = vec![n as u8];
    out.extend(best.unwrap_or_default());
    out
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// One representative per isomorphism class of graphs with exactly `edges`
/// edges and no isolated vertices.
///
/// Labeled edge lists are generated in lexicographic order with vertex labels
/// introduced in first-use order, then deduplicated by pairwise isomorphism
/// within degree-sequence buckets.
pub fn enumerate_classes(edges: usize) -> Vec<Graph> {
    if edges == 0 {
        return vec![Graph::empty(0).expect("empty graph")];
    }
    let mut buckets: std::collections::BTreeMap<Vec<usize>, Vec<Graph>> =
        std::collections::BTreeMap::new();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(edges);
    generate(&mut chosen, 0, edges, &mut |edge_list, order| {
        let g = Graph::from_edges(order, edge_list).expect("valid labeled graph");
        let mut key: Vec<usize> = (0..order).map(|v| g.degree(v)).collect();
        key.sort_unstable();
        key.push(g.triangles().len());
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|r| isomorphic(r, &g)) {
            bucket.push(g);
        }
    });
    buckets.into_values().flatten().collect()
}

fn generate(
    chosen: &mut Vec<(usize, usize)>,
    used: usize,
    remaining: usize,
    sink: &mut impl FnMut(&[(usize, usize)], usize),
) {
    if remaining == 0 {
        sink(chosen, used);
        return;
    }
    let floor = chosen.last().copied();
    // existing-existing (a < b < used), existing-new (b == used), and
    // new-new (a == used, b == used + 1), in lexicographic order above the
    // previous edge
    for a in 0..=used {
        let b_max = if a == used { used + 1 } else { used };
        for b in (a + 1)..=b_max {
            if let Some(prev) = floor {
                if (a, b) <= prev {
                    continue;
                }
            }
            let new_used = used.max(b + 1);
            chosen.push((a, b));
            generate(chosen, new_used, remaining - 1, sink);
            chosen.pop();
        }
    }
}

/// Subgraph embedding by backtracking: an injection of the pattern's
/// vertices into the host preserving pattern edges.
pub fn embeds(pattern: &Graph, host: &Graph) -> bool {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    // map pattern vertices in an order where each vertex after the first of
    // its component has an already-mapped neighbor
    let mut order: Vec<usize> = Vec::with_capacity(pattern.order());
    for comp in pattern.components() {
        let start = comp.trailing_zeros() as usize;
        let mut seen = bit(start);
        order.push(start);
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for w in set_bits(pattern.neighbors(v) & comp & !seen) {
                seen |= bit(w);
                order.push(w);
                frontier.push(w);
            }
        }
    }
    let mut image = vec![usize::MAX; pattern.order()];
    let mut used = 0u64;
    fn place(
        pattern: &Graph,
        host: &Graph,
        order: &[usize],
        idx: usize,
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for w in 0..host.order() {
            if *used & bit(w) != 0 || pattern.degree(v) > host.degree(w) {
                continue;
            }
            let ok = set_bits(pattern.neighbors(v))
                .filter(|&u| image[u] != usize::MAX)
                .all(|u| host.has_edge(image[u], w));
            if ok {
                image[v] = w;
                *used |= bit(w);
                if place(pattern, host, order, idx + 1, image, used) {
                    return true;
                }
                *used &= !bit(w);
                image[v] = usize::MAX;
            }
        }
        false
    }
    place(pattern, host, &order, 0, &mut image, &mut used)
}

/// Pattern as an explicit graph, for the embedding oracle.
pub fn pattern_graph(p: &Pattern) -> Graph {
    match *p {
        Pattern::Matching(t) => Graph::matching(t),
        Pattern::Path(m) => Graph::path(m),
        Pattern::Cycle(n) => Graph::cycle(n),
        Pattern::PathUnion(n, m) => Graph::path_union(n, m),
    }
    .expect("pattern parameters fit the vertex cap")
}

/// Naive containment: embed the pattern graph into the host.
pub fn contains_naive(host: &Graph, p: &Pattern) -> bool {
    embeds(&pattern_graph(p), host)
}

/// Naive arrowing decision scanning every red/blue split of the edges.
/// Restricted to hosts with at most 18 edges.
pub fn arrows_naive(f: &Graph, t: usize, h: &Pattern) -> bool {
    let edges = f.edges();
    assert!(edges.len() <= 18, "naive arrowing oracle is limited to 18 edges");
    let red_target = Graph::matching(t).expect("matching fits");
    for mask in 0u64..(1 << edges.len()) {
        let mut red = Graph::empty(f.order()).expect("order fits");
        let mut blue = *f;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask & bit(i) != 0 {
                red = red.add_edge(u, v).expect("edge in host");
                blue = blue.remove_edge(u, v);
            }
        }
        if !embeds(&red_target, &red) && !contains_naive(&blue, h) {
            return false;
        }
    }
    true
}
