//! Property-based checks of the core invariants against independent
//! oracles: a brute-force injective-map enumerator for embedding counts,
//! and an edge-deletion girth oracle built on petgraph.

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use proptest::prelude::*;

use freeway::graph::{Graph, GraphBuilder, Role, RoleKind, VertexId};
use freeway::search::{enumerate_embeddings, find_bridge, girth, highway_census};
use freeway::{io, Format};

/// Builds a graph from a vertex count and an arbitrary pair mask.
fn graph_from_mask(n: usize, mask: u64, roles: &[Role]) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(roles.get(i).cloned().unwrap_or_else(Role::plain));
    }
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> (bit % 64) & 1 == 1 {
                b.add_edge(VertexId(u), VertexId(v)).unwrap();
            }
            bit += 1;
        }
    }
    b.finalize()
}

fn arb_role() -> impl Strategy<Value = Role> {
    let kinds = prop_oneof![
        Just(RoleKind::Plain),
        Just(RoleKind::CliqueK),
        Just(RoleKind::PathP),
        Just(RoleKind::CornerX),
        Just(RoleKind::HelperU),
        Just(RoleKind::ExitLeft),
    ];
    (kinds, proptest::collection::vec(0u32..9, 0..=3)).prop_map(|(kind, ix)| Role { kind, ix })
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), proptest::collection::vec(arb_role(), 0..=9))
        .prop_map(|(n, mask, roles)| graph_from_mask(n, mask, &roles))
}

/// Independent girth oracle: remove each edge in turn and ask petgraph for
/// the shortest remaining path between its endpoints.
fn girth_oracle(g: &Graph) -> Option<usize> {
    let edges: Vec<_> = g.edges().collect();
    let mut best: Option<usize> = None;
    for &(skip_u, skip_v) in &edges {
        let mut pg = UnGraph::<(), ()>::new_undirected();
        let nodes: Vec<NodeIndex> = (0..g.vertex_count()).map(|_| pg.add_node(())).collect();
        for &(u, v) in &edges {
            if (u, v) != (skip_u, skip_v) {
                pg.add_edge(nodes[u.index()], nodes[v.index()], ());
            }
        }
        let dist = dijkstra(&pg, nodes[skip_u.index()], Some(nodes[skip_v.index()]), |_| 1usize);
        if let Some(&d) = dist.get(&nodes[skip_v.index()]) {
            let cycle = d + 1;
            if best.is_none_or(|b| cycle < b) {
                best = Some(cycle);
            }
        }
    }
    best
}

/// Brute-force embedding count over all injective maps.
fn embedding_count_oracle(pattern: &Graph, host: &Graph, induced: bool) -> usize {
    fn extend(
        pattern: &Graph,
        host: &Graph,
        induced: bool,
        assignment: &mut Vec<VertexId>,
        used: &mut Vec<bool>,
    ) -> usize {
        if assignment.len() == pattern.vertex_count() {
            return 1;
        }
        let p = VertexId(assignment.len());
        let mut count = 0;
        'hosts: for h in host.vertices() {
            if used[h.index()] {
                continue;
            }
            for (q_index, &hq) in assignment.iter().enumerate() {
                let pattern_edge = pattern.has_edge(p, VertexId(q_index));
                let host_edge = host.has_edge(h, hq);
                if pattern_edge && !host_edge {
                    continue 'hosts;
                }
                if induced && !pattern_edge && host_edge {
                    continue 'hosts;
                }
            }
            assignment.push(h);
            used[h.index()] = true;
            count += extend(pattern, host, induced, assignment, used);
            assignment.pop();
            used[h.index()] = false;
        }
        count
    }
    let mut used = vec![false; host.vertex_count()];
    extend(pattern, host, induced, &mut Vec::new(), &mut used)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_sum_is_twice_edge_count(g in arb_graph(9)) {
        let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn identify_shrinks_vertices_and_never_grows_edges(g in arb_graph(8)) {
        let non_adjacent: Vec<_> = g
            .vertices()
            .flat_map(|u| g.vertices().map(move |v| (u, v)))
            .filter(|&(u, v)| u < v && !g.has_edge(u, v))
            .collect();
        for (u, v) in non_adjacent {
            let merged = g.identify(u, v).unwrap();
            prop_assert_eq!(merged.vertex_count(), g.vertex_count() - 1);
            prop_assert!(merged.edge_count() <= g.edge_count());
        }
    }

    #[test]
    fn json_round_trip_is_identity(g in arb_graph(9)) {
        let parsed = io::parse(&io::serialize(&g, Format::Json), Format::Json).unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn edgelist_round_trip_preserves_structure(g in arb_graph(9)) {
        // The edge list cannot express isolated vertices or roles.
        prop_assume!(g.vertices().all(|v| g.degree(v) > 0));
        let parsed = io::parse(&io::serialize(&g, Format::EdgeList), Format::EdgeList).unwrap();
        prop_assert_eq!(parsed.vertex_count(), g.vertex_count());
        let parsed_edges: Vec<_> = parsed.edges().collect();
        let original_edges: Vec<_> = g.edges().collect();
        prop_assert_eq!(parsed_edges, original_edges);
    }

    #[test]
    fn girth_matches_the_edge_deletion_oracle(g in arb_graph(8)) {
        prop_assert_eq!(girth(&g), girth_oracle(&g));
    }

    #[test]
    fn relabel_preserves_structural_invariants(g in arb_graph(8), seed in 0u64..500) {
        let shuffled = g.relabel(seed);
        prop_assert_eq!(shuffled.degree_multiset(), g.degree_multiset());
        prop_assert_eq!(girth(&shuffled), girth(&g));
        prop_assert_eq!(highway_census(&shuffled), highway_census(&g));
    }

    #[test]
    fn embedding_counts_match_brute_force(
        pattern_mask in any::<u64>(),
        host_mask in any::<u64>(),
        pattern_n in 1usize..=4,
        host_n in 1usize..=6,
        induced in any::<bool>(),
    ) {
        let pattern = graph_from_mask(pattern_n, pattern_mask, &[]);
        let host = graph_from_mask(host_n, host_mask, &[]);
        let found = enumerate_embeddings(&pattern, &host, induced, &[], 100_000).unwrap();
        prop_assert_eq!(found.len(), embedding_count_oracle(&pattern, &host, induced));
        for embedding in &found {
            prop_assert!(embedding.verify(&pattern, &host, induced));
        }
    }

    #[test]
    fn induced_embeddings_imply_plain_ones(
        pattern_mask in any::<u64>(),
        host_mask in any::<u64>(),
        pattern_n in 1usize..=4,
        host_n in 1usize..=6,
    ) {
        let pattern = graph_from_mask(pattern_n, pattern_mask, &[]);
        let host = graph_from_mask(host_n, host_mask, &[]);
        let induced = enumerate_embeddings(&pattern, &host, true, &[], 1).unwrap();
        if !induced.is_empty() {
            let plain = enumerate_embeddings(&pattern, &host, false, &[], 1).unwrap();
            prop_assert!(!plain.is_empty());
        }
    }

    #[test]
    fn bridge_detection_is_monotone_under_edge_addition(g in arb_graph(8)) {
        if find_bridge(&g, 1).unwrap().is_some() {
            let non_adjacent: Vec<_> = g
                .vertices()
                .flat_map(|u| g.vertices().map(move |v| (u, v)))
                .filter(|&(u, v)| u < v && !g.has_edge(u, v))
                .collect();
            for (u, v) in non_adjacent {
                let bigger = g.with_edge(u, v).unwrap();
                prop_assert!(find_bridge(&bigger, 1).unwrap().is_some());
            }
        }
    }
}
