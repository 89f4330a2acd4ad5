//! Property tests over random graphs: serialization round trips, label
//! invariance, edge accounting, and containment monotonicity.

use proptest::prelude::*;
use sizeramsey::arrowing::{verify_coloring, ColoringVerdict};
use sizeramsey::canon::canonical_form;
use sizeramsey::graph::{vertex_set, Graph};
use sizeramsey::graph6::{decode_graph6, encode_graph6};
use sizeramsey::patterns::{contains, max_matching_size, Pattern};

/// Arbitrary labeled graph on up to 12 vertices.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..=12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |picks| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&picks)
                .filter_map(|(&e, &keep)| keep.then_some(e))
                .collect();
            Graph::from_edges(n, &chosen).expect("valid random graph")
        })
    })
}

fn arb_pattern() -> impl Strategy<Value = Pattern> {
    prop_oneof![
        (1usize..=4).prop_map(|t| Pattern::matching(t).unwrap()),
        (1usize..=7).prop_map(|m| Pattern::path(m).unwrap()),
        (3usize..=7).prop_map(|n| Pattern::cycle(n).unwrap()),
        ((1usize..=3), (1usize..=4)).prop_map(|(n, m)| Pattern::path_union(n, m).unwrap()),
    ]
}

proptest! {
    #[test]
    fn graph6_roundtrip_is_identity(g in arb_graph()) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_code_ignores_labeling(g in arb_graph(), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut permuted = Graph::empty(n).unwrap();
        for (u, v) in g.edges() {
            permuted = permuted.add_edge(perm[u], perm[v]).unwrap();
        }
        prop_assert_eq!(canonical_form(&permuted), canonical_form(&g));
    }

    #[test]
    fn deletion_conserves_edges(g in arb_graph(), raw_set in any::<u64>()) {
        let s = raw_set & g.vertex_mask();
        let incident = g
            .edges()
            .iter()
            .filter(|&&(u, v)| s & vertex_set(&[u, v]) != 0)
            .count();
        prop_assert_eq!(g.delete_vertices(s).edge_count() + incident, g.edge_count());
    }

    #[test]
    fn containment_is_monotone_under_edge_addition(g in arb_graph(), p in arb_pattern()) {
        if contains(&g, &p) {
            for u in 0..g.order() {
                for v in (u + 1)..g.order() {
                    if !g.has_edge(u, v) {
                        prop_assert!(contains(&g.add_edge(u, v).unwrap(), &p));
                    }
                }
            }
        }
    }

    #[test]
    fn containment_is_monotone_under_deletion(g in arb_graph(), p in arb_pattern(), raw_set in any::<u64>()) {
        let s = raw_set & g.vertex_mask();
        if contains(&g.delete_vertices(s), &p) {
            prop_assert!(contains(&g, &p));
        }
    }

    #[test]
    fn matching_number_is_additive(g in arb_graph()) {
        let by_parts: usize = g
            .components()
            .iter()
            .map(|&c| max_matching_size(&g.delete_vertices(g.vertex_mask() & !c)))
            .sum();
        prop_assert_eq!(max_matching_size(&g), by_parts);
    }

    #[test]
    fn all_red_coloring_verdicts_are_consistent(g in arb_graph(), p in arb_pattern()) {
        // under the all-red coloring blue keeps only the (spanning) vertex
        // set, so blue violations happen exactly for edgeless patterns that
        // fit the order
        let coloring = sizeramsey::arrowing::Coloring::new(g, &g.edges()).unwrap();
        let verdict = verify_coloring(&g, 2, &p, &coloring).unwrap();
        let expected = if max_matching_size(&g) >= 2 {
            ColoringVerdict::RedViolation
        } else if !p.has_edges() && g.order() >= p.vertex_count() {
            ColoringVerdict::BlueViolation
        } else {
            ColoringVerdict::Valid
        };
        prop_assert_eq!(verdict, expected);
    }
}
