//! Canonical forms via equitable partition refinement plus backtracking over
//! the remaining orbit choices.
//!
//! The canonical form of a graph is the lexicographically smallest packed
//! adjacency encoding over the labelings reached by the refinement search.
//! Disconnected graphs are canonicalized component by component and the
//! components concatenated in sorted code order, which keeps highly symmetric
//! unions (matchings, copies of one shape) cheap. Inside a component, a cell
//! whose members are mutually interchangeable twins is split without
//! branching.

use crate::graph::{bit, set_bits, Graph};

/// Label-invariant encoding of a graph: equal codes exactly for isomorphic
/// graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    bytes: Vec<u8>,
    order: u8,
    edge_count: u16,
}

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count as usize
    }
}

/// Canonical code of `g`.
pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_labeling(g).1
}

/// Canonically relabeled copy of `g` together with its code.
pub fn canonical_labeling(g: &Graph) -> (Graph, CanonicalCode) {
    let comps = g.components();
    let mut pieces: Vec<(Vec<u8>, Vec<usize>)> = Vec::with_capacity(comps.len());
    for comp in comps {
        let survivors: Vec<usize> = set_bits(comp).collect();
        let sub = g.delete_vertices(g.vertex_mask() & !comp);
        let local = canonical_component(&sub);
        // map canonical position -> original vertex of g
        let pos_to_old: Vec<usize> = local.iter().map(|&l| survivors[l as usize]).collect();
        let code = encode_positions(&sub, &local);
        pieces.push((code, pos_to_old));
    }
    pieces.sort();
    let mut pos_to_old = Vec::with_capacity(g.order());
    for (_, piece) in &pieces {
        pos_to_old.extend_from_slice(piece);
    }
    let relabeled = relabel(g, &pos_to_old);
    let code = CanonicalCode {
        bytes: encode_graph_bytes(&relabeled),
        order: relabeled.order() as u8,
        edge_count: relabeled.edge_count() as u16,
    };
    (relabeled, code)
}

/// The edge of a canonically labeled graph occupying the last position in
/// column-major upper-triangle order. This is the edge removed to obtain the
/// canonical parent during augmentation.
pub fn canonical_last_edge(canonical: &Graph) -> Option<(usize, usize)> {
    canonical.edges().into_iter().max_by_key(|&(u, v)| (v, u))
}

fn relabel(g: &Graph, pos_to_old: &[usize]) -> Graph {
    let mut out = Graph::empty(g.order()).expect("same order");
    for i in 0..pos_to_old.len() {
        for j in (i + 1)..pos_to_old.len() {
            if g.has_edge(pos_to_old[i], pos_to_old[j]) {
                out = out.add_edge(i, j).expect("indices in range");
            }
        }
    }
    out
}

fn encode_graph_bytes(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | u8::from(g.has_edge(row, col));
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    bytes
}

/// Packed adjacency of `g` under the labeling `pos_to_old` (local indices).
fn encode_positions(g: &Graph, pos_to_old: &[u8]) -> Vec<u8> {
    let n = pos_to_old.len();
    let mut bytes = vec![n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            let e = g.has_edge(pos_to_old[row] as usize, pos_to_old[col] as usize);
            acc = (acc << 1) | u8::from(e);
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    bytes
}

/// Canonical labeling of a connected (or otherwise indivisible) graph,
/// returned as position -> vertex.
fn canonical_component(g: &Graph) -> Vec<u8> {
    let n = g.order();
    if n <= 1 {
        return (0..n as u8).collect();
    }
    let mut cells: Vec<Vec<u8>> = vec![(0..n as u8).collect()];
    refine(g, &mut cells);
    let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
    search(g, cells, &mut best);
    best.expect("search visits at least one leaf").1
}

fn cell_mask(cell: &[u8]) -> u64 {
    cell.iter().fold(0u64, |m, &v| m | bit(v as usize))
}

/// Equitable refinement: repeatedly split cells whose members disagree on
/// their neighbor count into some cell, ordering sub-cells by count.
fn refine(g: &Graph, cells: &mut Vec<Vec<u8>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut split: Option<(usize, Vec<Vec<u8>>)> = None;
        #[allow(clippy::needless_range_loop)]
        'scan: for ci in 0..cells.len() {
            if cells[ci].len() <= 1 {
                continue;
            }
            for smask in &masks {
                let counts: Vec<u32> = cells[ci]
                    .iter()
                    .map(|&v| (g.neighbors(v as usize) & smask).count_ones())
                    .collect();
                if counts.iter().any(|&c| c != counts[0]) {
                    let mut groups: std::collections::BTreeMap<u32, Vec<u8>> =
                        std::collections::BTreeMap::new();
                    for (&v, &c) in cells[ci].iter().zip(&counts) {
                        groups.entry(c).or_default().push(v);
                    }
                    split = Some((ci, groups.into_values().collect()));
                    break 'scan;
                }
            }
        }
        match split {
            Some((ci, parts)) => {
                cells.splice(ci..=ci, parts);
            }
            None => break,
        }
    }
}

/// True when all members of the cell are pairwise interchangeable: the cell
/// induces a complete or empty graph and is complete or empty towards every
/// other cell. Any ordering of such a cell extends to an automorphism, so the
/// search fixes it without branching.
fn is_twin_cell(g: &Graph, cells: &[Vec<u8>], ci: usize) -> bool {
    let cmask = cell_mask(&cells[ci]);
    let complete = cells[ci]
        .iter()
        .all(|&v| g.neighbors(v as usize) & cmask == cmask ^ bit(v as usize));
    let empty = cells[ci].iter().all(|&v| g.neighbors(v as usize) & cmask == 0);
    if !complete && !empty {
        return false;
    }
    for (di, dcell) in cells.iter().enumerate() {
        if di == ci {
            continue;
        }
        let dmask = cell_mask(dcell);
        let first = g.neighbors(cells[ci][0] as usize) & dmask;
        if first != 0 && first != dmask {
            return false;
        }
        if !cells[ci]
            .iter()
            .all(|&v| g.neighbors(v as usize) & dmask == first)
        {
            return false;
        }
    }
    true
}

fn search(g: &Graph, cells: Vec<Vec<u8>>, best: &mut Option<(Vec<u8>, Vec<u8>)>) {
    let target = cells.iter().position(|c| c.len() > 1);
    match target {
        None => {
            let labeling: Vec<u8> = cells.iter().map(|c| c[0]).collect();
            let code = encode_positions(g, &labeling);
            match best {
                Some((b, _)) if *b <= code => {}
                _ => *best = Some((code, labeling)),
            }
        }
        Some(ci) if is_twin_cell(g, &cells, ci) => {
            let mut next = Vec::with_capacity(cells.len() + cells[ci].len() - 1);
            for (i, cell) in cells.into_iter().enumerate() {
                if i == ci {
                    next.extend(cell.into_iter().map(|v| vec![v]));
                } else {
                    next.push(cell);
                }
            }
            search(g, next, best);
        }
        Some(ci) => {
            for k in 0..cells[ci].len() {
                let v = cells[ci][k];
                let mut next = Vec::with_capacity(cells.len() + 1);
                for (i, cell) in cells.iter().enumerate() {
                    if i == ci {
                        next.push(vec![v]);
                        next.push(cell.iter().copied().filter(|&w| w != v).collect());
                    } else {
                        next.push(cell.clone());
                    }
                }
                refine(g, &mut next);
                search(g, next, best);
            }
        }
    }
}
