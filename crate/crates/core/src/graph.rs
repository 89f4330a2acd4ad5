//! Small simple graphs as fixed-width adjacency bitmasks.
//!
//! Every graph in this crate lives on at most [`MAX_VERTICES`] vertices, with
//! the neighborhood of vertex `v` stored as a `u64` mask. All operations are
//! pure: they return new values and never mutate shared state.

use std::fmt;
use thiserror::Error;

/// Hard cap on the number of vertices.
///
/// Every search target handled by this crate fits comfortably: hosts stay
/// below ~30 edges, and the largest explicit construction (`5P7`) has 35
/// vertices. Construction beyond the cap is an error, never a truncation.
pub const MAX_VERTICES: usize = 40;

/// A set of vertices, one bit per vertex index.
pub type VertexSet = u64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Builds a vertex set from explicit indices.
pub fn vertex_set(vs: &[usize]) -> VertexSet {
    vs.iter().fold(0u64, |m, &v| m | bit(v))
}

/// Iterates the indices of the set bits in ascending order.
pub fn set_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {order} exceeds the {MAX_VERTICES}-vertex cap")]
    OrderTooLarge { order: usize },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: usize },
    #[error("disjoint union has order {order}, exceeding the {MAX_VERTICES}-vertex cap")]
    UnionTooLarge { order: usize },
}

/// Immutable simple graph on at most [`MAX_VERTICES`] vertices.
///
/// Invariants: adjacency is symmetric and irreflexive, masks carry no bits at
/// or above `order`, and `edge_count` is half the total popcount.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    order: u8,
    edge_count: u16,
    adj: [u64; MAX_VERTICES],
}

/// Length of a shortest cycle, or the marker for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Acyclic,
    Length(usize),
}

impl Girth {
    /// True when the shortest cycle (if any) has length at least `k`.
    /// Forests pass every threshold.
    pub fn at_least(&self, k: usize) -> bool {
        match self {
            Girth::Acyclic => true,
            Girth::Length(l) => *l >= k,
        }
    }
}

impl Graph {
    /// The edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Graph, GraphError> {
        if order > MAX_VERTICES {
            return Err(GraphError::OrderTooLarge { order });
        }
        Ok(Graph {
            order: order as u8,
            edge_count: 0,
            adj: [0u64; MAX_VERTICES],
        })
    }

    /// Builds a graph from an explicit edge list. Duplicate pairs collapse to
    /// a single edge; loops and out-of-range endpoints are errors.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g = g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count as usize
    }

    /// Mask with one bit per vertex of the graph.
    pub fn vertex_mask(&self) -> VertexSet {
        if self.order == 0 {
            0
        } else {
            u64::MAX >> (64 - self.order as u32)
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order() && v < self.order());
        self.adj[u] & bit(v) != 0
    }

    /// Neighborhood mask of `v`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.order());
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in set_bits(self.adj[u]) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Copy of the graph with one extra edge. Adding an existing edge is a
    /// no-op on the edge count.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let order = self.order();
        if u >= order {
            return Err(GraphError::VertexOutOfRange { vertex: u, order });
        }
        if v >= order {
            return Err(GraphError::VertexOutOfRange { vertex: v, order });
        }
        if u == v {
            return Err(GraphError::LoopEdge { vertex: u });
        }
        let mut g = *self;
        if g.adj[u] & bit(v) == 0 {
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
            g.edge_count += 1;
        }
        Ok(g)
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = *self;
        if u < g.order() && v < g.order() && g.adj[u] & bit(v) != 0 {
            g.adj[u] &= !bit(v);
            g.adj[v] &= !bit(u);
            g.edge_count -= 1;
        }
        g
    }

    /// Same graph with `extra` appended isolated vertices.
    pub fn grow(&self, extra: usize) -> Result<Graph, GraphError> {
        let order = self.order() + extra;
        if order > MAX_VERTICES {
            return Err(GraphError::OrderTooLarge { order });
        }
        let mut g = *self;
        g.order = order as u8;
        Ok(g)
    }

    /// Induced subgraph after deleting the vertex set `s`; survivors are
    /// reindexed contiguously, ascending by original index.
    pub fn delete_vertices(&self, s: VertexSet) -> Graph {
        let keep = self.vertex_mask() & !s;
        let survivors: Vec<usize> = set_bits(keep).collect();
        let mut g = Graph {
            order: survivors.len() as u8,
            edge_count: 0,
            adj: [0u64; MAX_VERTICES],
        };
        for (new_u, &old_u) in survivors.iter().enumerate() {
            for (new_v, &old_v) in survivors.iter().enumerate().skip(new_u + 1) {
                if self.adj[old_u] & bit(old_v) != 0 {
                    g.adj[new_u] |= bit(new_v);
                    g.adj[new_v] |= bit(new_u);
                    g.edge_count += 1;
                }
            }
        }
        g
    }

    /// Spanning subgraph keeping all vertices but dropping every edge that
    /// meets the set `s`.
    pub fn remove_edges_at(&self, s: VertexSet) -> Graph {
        let mut g = *self;
        for v in set_bits(s & self.vertex_mask()) {
            for w in set_bits(g.adj[v]) {
                g.adj[w] &= !bit(v);
            }
            g.adj[v] = 0;
        }
        g.edge_count = (0..g.order()).map(|v| g.adj[v].count_ones() as u16).sum::<u16>() / 2;
        g
    }

    /// Spanning subgraph with exactly the given edges removed.
    pub fn remove_edge_list(&self, edges: &[(usize, usize)]) -> Graph {
        edges.iter().fold(*self, |g, &(u, v)| g.remove_edge(u, v))
    }

    /// Drops isolated vertices, reindexing survivors contiguously.
    pub fn drop_isolated(&self) -> Graph {
        let isolated: VertexSet = (0..self.order())
            .filter(|&v| self.adj[v] == 0)
            .fold(0u64, |m, v| m | bit(v));
        if isolated == 0 {
            *self
        } else {
            self.delete_vertices(isolated)
        }
    }

    /// Every vertex triple inducing a K3, ascending, each exactly once.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in set_bits(self.adj[u]) {
                if v <= u {
                    continue;
                }
                let common = self.adj[u] & self.adj[v];
                for w in set_bits(common) {
                    if w > v {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Length of a shortest cycle. BFS from every root; the minimum over all
    /// detected closed walks is exact for unweighted graphs.
    pub fn girth(&self) -> Girth {
        let n = self.order();
        let mut best = usize::MAX;
        for root in 0..n {
            if self.degree(root) < 2 {
                continue;
            }
            let mut dist = [usize::MAX; MAX_VERTICES];
            let mut parent = [usize::MAX; MAX_VERTICES];
            let mut queue = std::collections::VecDeque::new();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if 2 * dist[x] >= best {
                    break;
                }
                for y in set_bits(self.adj[x]) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if y != parent[x] && parent[y] != x {
                        best = best.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Acyclic
        } else {
            Girth::Length(best)
        }
    }

    /// Vertices reachable from `start` walking only inside `allowed`.
    /// `start` must itself lie in `allowed`.
    pub fn reachable_from(&self, start: usize, allowed: VertexSet) -> VertexSet {
        debug_assert!(allowed & bit(start) != 0);
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0u64;
            for v in set_bits(frontier) {
                next |= self.adj[v] & allowed & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected-component partition as vertex masks, ordered by smallest
    /// member. Isolated vertices appear as singletons.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut remaining = self.vertex_mask();
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let comp = self.reachable_from(start, remaining);
            out.push(comp);
            remaining &= !comp;
        }
        out
    }

    /// True for the empty graph and for any graph with one component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let order = self.order() + other.order();
        if order > MAX_VERTICES {
            return Err(GraphError::UnionTooLarge { order });
        }
        let shift = self.order();
        let mut g = *self;
        g.order = order as u8;
        for v in 0..other.order() {
            g.adj[shift + v] = other.adj[v] << shift;
        }
        g.edge_count += other.edge_count;
        Ok(g)
    }

    /// Path on `m` vertices, labeled 0..m-1 along the path.
    pub fn path(m: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(m)?;
        for i in 1..m {
            g = g.add_edge(i - 1, i)?;
        }
        Ok(g)
    }

    /// Cycle on `n >= 3` vertices, labeled 0..n-1 around the cycle.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n)?;
        g = g.add_edge(n - 1, 0)?;
        Ok(g)
    }

    /// Matching of `t` disjoint edges on 2t vertices.
    pub fn matching(t: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(2 * t)?;
        for i in 0..t {
            g = g.add_edge(2 * i, 2 * i + 1)?;
        }
        Ok(g)
    }

    /// Disjoint union of `n` paths on `m` vertices each; path `j` occupies
    /// vertices `j*m .. (j+1)*m`.
    pub fn path_union(n: usize, m: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n * m)?;
        for j in 0..n {
            for i in 1..m {
                g = g.add_edge(j * m + i - 1, j * m + i)?;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={}, {:?})", self.order, self.edge_count, self.edges())
    }
}
