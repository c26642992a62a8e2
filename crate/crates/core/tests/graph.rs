//! Structure tests for weighted multigraphs: counts, cuts, specializations,
//! refinements, spanning trees, cycle bases, and isomorphism search.

mod common;

use common::*;
use tropjac_core::graph::{Edge, EdgeSet, VertexSet, WeightedGraph};
use tropjac_core::Error;

#[test]
fn theta_basic_counts() {
    let g = theta();
    assert_eq!(g.n_vertices(), 2);
    assert_eq!(g.n_edges(), 3);
    assert_eq!(g.b0(), 1);
    assert_eq!(g.b1(), 2);
    assert_eq!(g.genus(), 2);
    assert!(g.is_connected());
    assert!(g.is_stable_graph());
    assert_eq!(g.valence(0), 3);
    assert_eq!(g.valence(1), 3);
}

#[test]
fn dumbbell_basic_counts() {
    let g = dumbbell();
    assert_eq!(g.genus(), 2);
    assert!(g.is_stable_graph());
    // A loop contributes twice to the valence.
    assert_eq!(g.valence(0), 3);
    assert_eq!(g.valence(1), 3);
}

#[test]
fn weights_raise_genus() {
    let g = bouquet(2, 0);
    assert_eq!(g.genus(), 2);
    assert_eq!(g.b1(), 0);
    let h = bouquet(1, 1);
    assert_eq!(h.genus(), 2);
    assert_eq!(h.b1(), 1);
}

#[test]
fn edge_endpoints_and_loops() {
    let e = Edge::new(2, 5);
    assert!(!e.is_loop());
    assert_eq!(e.other(2), 5);
    assert_eq!(e.other(5), 2);
    assert!(e.touches(2) && e.touches(5) && !e.touches(3));
    assert!(Edge::new(1, 1).is_loop());
}

#[test]
fn vertex_out_of_range_is_rejected() {
    let got = WeightedGraph::new(vec![0, 0], vec![Edge::new(0, 2)]);
    assert!(matches!(got, Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn cuts_exclude_loops() {
    let g = dumbbell();
    let (cut, delta) = g.cut_and_delta(VertexSet::singleton(0));
    assert_eq!(cut, EdgeSet::from_indices(&[1]));
    assert_eq!(delta, 1);
    let h = theta();
    let (cut, delta) = h.cut_and_delta(VertexSet::singleton(1));
    assert_eq!(cut, h.all_edges());
    assert_eq!(delta, 3);
}

#[test]
fn cut_between_parts() {
    let g = path(3);
    let cut = g.cut_between(VertexSet::singleton(0), VertexSet::singleton(2));
    assert!(cut.is_empty());
    let cut = g.cut_between(VertexSet::singleton(0), VertexSet::singleton(1));
    assert_eq!(cut, EdgeSet::from_indices(&[0]));
}

#[test]
fn deletion_components() {
    let g = theta();
    let ids = g.components_in(EdgeSet::EMPTY);
    assert_eq!(ids, vec![0, 1]);
    let ids = g.components_in(g.all_edges());
    assert_eq!(ids, vec![0, 0]);
    let d = g.delete(g.all_edges());
    assert_eq!(d.n_edges(), 0);
    assert_eq!(d.b0(), 2);
}

#[test]
fn contraction_preserves_genus() {
    let g = theta();
    // Contracting one parallel edge turns the other two into loops.
    let spec = g.contract(EdgeSet::from_indices(&[0]));
    assert_eq!(spec.target.n_vertices(), 1);
    assert_eq!(spec.target.n_edges(), 2);
    assert!(spec.target.edges().iter().all(|e| e.is_loop()));
    assert_eq!(spec.target.genus(), 2);
    assert_eq!(spec.vertex_map, vec![0, 0]);

    // Contracting two parallel edges removes the cycle edge into a weight.
    let spec = g.contract(EdgeSet::from_indices(&[0, 1]));
    assert_eq!(spec.target.n_vertices(), 1);
    assert_eq!(spec.target.n_edges(), 1);
    assert_eq!(spec.target.weight(0), 1);
    assert_eq!(spec.target.genus(), 2);

    // Contracting everything stores the whole genus in the weight.
    let spec = g.contract(g.all_edges());
    assert_eq!(spec.target.n_edges(), 0);
    assert_eq!(spec.target.weight(0), 2);
}

#[test]
fn contraction_maps_edge_sets() {
    let g = dumbbell();
    let spec = g.contract(EdgeSet::from_indices(&[1]));
    assert_eq!(spec.target.n_vertices(), 1);
    assert_eq!(spec.target.n_edges(), 2);
    // Surviving edges keep their identity through the edge map.
    let pushed = spec.push_edge_set(EdgeSet::from_indices(&[0, 2]));
    assert_eq!(pushed.len(), 2);
    let back = spec.pull_vertex_set(VertexSet::singleton(0));
    assert_eq!(back, VertexSet::from_indices(&[0, 1]));
}

#[test]
fn refinement_splits_marked_edges() {
    let g = theta();
    let r = g.refine(EdgeSet::from_indices(&[0, 2]));
    assert_eq!(r.graph.n_vertices(), 4);
    assert_eq!(r.graph.n_edges(), 5);
    assert_eq!(r.mid_vertices.len(), 2);
    // Inserted vertices carry weight zero and valence two.
    for &(_, mid) in &r.mid_vertices {
        assert_eq!(r.graph.weight(mid), 0);
        assert_eq!(r.graph.valence(mid), 2);
    }
    assert_eq!(r.graph.genus(), g.genus());
    assert_eq!(r.graph.b1(), g.b1());
}

#[test]
fn spanning_tree_orientations() {
    let g = theta();
    let t = g.spanning_tree(0).unwrap();
    assert_eq!(t.edges.len(), 1);
    let e = t.edges.iter().next().unwrap();
    assert_eq!(t.is_forward(e), Some(true));
    assert_eq!(t.is_forward(5), None);

    let p = path(4);
    let t = p.spanning_tree(3).unwrap();
    assert_eq!(t.edges.len(), 3);
    // Walking away from the root reverses every path edge.
    for e in t.edges.iter() {
        assert_eq!(t.is_forward(e), Some(false));
    }
}

#[test]
fn spanning_tree_needs_connectivity() {
    let g = WeightedGraph::new(vec![0, 0], vec![]).unwrap();
    assert!(matches!(g.spanning_tree(0), Err(Error::NotConnected)));
}

#[test]
fn cycle_basis_is_a_basis_of_circulations() {
    for g in [theta(), dumbbell(), cycle(4), two_cycle()] {
        let basis = g.cycle_space_basis();
        assert_eq!(basis.len(), g.b1());
        // Every cycle vector has zero signed flow through each vertex.
        for gamma in &basis {
            let mut flow = vec![0i64; g.n_vertices()];
            for (i, &c) in gamma.iter().enumerate() {
                let e = g.edge(i);
                if !e.is_loop() {
                    flow[e.s] -= c;
                    flow[e.t] += c;
                }
            }
            assert!(flow.iter().all(|&f| f == 0), "not a circulation: {gamma:?}");
            assert!(gamma.iter().any(|&c| c != 0));
        }
    }
}

#[test]
fn tree_has_no_cycles() {
    assert!(path(4).cycle_space_basis().is_empty());
}

#[test]
fn theta_automorphism_group() {
    let g = theta();
    let autos = g.automorphisms().unwrap();
    // Vertex swap times all permutations of the three parallel edges.
    assert_eq!(autos.len(), 12);
    let op: Vec<_> = autos.iter().filter(|a| a.is_orientation_preserving()).collect();
    assert_eq!(op.len(), 6);
    // Orientation-preserving automorphisms fix both vertices here.
    for a in op {
        assert_eq!(a.vertex_map, vec![0, 1]);
    }
}

#[test]
fn dumbbell_automorphism_group() {
    let g = dumbbell();
    // Automorphisms are vertex/edge permutation pairs, so the two loops
    // cannot be reversed in place: identity and the vertex swap only.
    let autos = g.automorphisms().unwrap();
    assert_eq!(autos.len(), 2);
    let op: Vec<_> = autos.iter().filter(|a| a.is_orientation_preserving()).collect();
    assert_eq!(op.len(), 1);
    assert_eq!(op[0].vertex_map, vec![0, 1]);
}

#[test]
fn isomorphism_respects_weights() {
    let a = bouquet(1, 1);
    let b = bouquet(0, 1);
    assert!(a.isomorphisms(&b).unwrap().is_empty());
    let c = bouquet(1, 1);
    assert!(!a.isomorphisms(&c).unwrap().is_empty());
}

#[test]
fn theta_and_dumbbell_are_not_isomorphic() {
    assert!(theta().isomorphisms(&dumbbell()).unwrap().is_empty());
}

#[test]
fn subset_iterators() {
    let s = EdgeSet::from_indices(&[0, 2, 3]);
    assert_eq!(s.len(), 3);
    assert_eq!(s.indices(), vec![0, 2, 3]);
    let subs: Vec<EdgeSet> = s.subsets().collect();
    assert_eq!(subs.len(), 8);
    assert!(subs.contains(&EdgeSet::EMPTY));
    assert!(subs.contains(&s));
    for t in subs {
        assert!(t.is_subset_of(s));
    }
    let v = VertexSet::from_indices(&[1, 3]);
    assert_eq!(v.complement(4), VertexSet::from_indices(&[0, 2]));
}

#[test]
fn small_corpus_is_deduplicated_and_connected() {
    let corpus = small_corpus(3, 3);
    for g in &corpus {
        assert!(g.is_connected());
        assert!(g.n_vertices() <= 3 && g.n_edges() <= 3);
    }
    for i in 0..corpus.len() {
        for j in i + 1..corpus.len() {
            assert!(
                corpus[i].isomorphisms(&corpus[j]).unwrap_or_default().is_empty(),
                "corpus entries {i} and {j} are isomorphic"
            );
        }
    }
    // Hand count for n <= 3, m <= 3.
    //   n=1: 0..=3 loops                                      -> 4
    //   n=2: 1..=3 parallel edges                             -> 3
    //        bridge + loops (1,0), (1,1), (2,0) up to swap    -> 3
    //        two parallel edges + one loop                    -> 1
    //   n=3: path                                             -> 1
    //        path + third edge: doubled end edge, triangle,
    //        loop at an end, loop at the middle               -> 4
    assert_eq!(corpus.len(), 16);
}
