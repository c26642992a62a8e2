//! Stability predicates and enumeration, frozen against hand-computed
//! values on the named fixtures, plus algebraic identities as property
//! tests.

mod common;

use common::*;
use proptest::prelude::*;
use tropjac_core::graph::{EdgeSet, VertexSet};
use tropjac_core::rat::{rat, zero};
use tropjac_core::stability::{
    beta, canonical_polarization, enumerate_pseudo_divisors, format_pd, interpolate,
    interpolate_all, is_polystable, is_quasistable, is_semistable, is_stable, pushforward_pd,
    pushforward_polarization, rank, specialization_witnesses, specializes_to, BetaEngine,
    Polarization, PseudoDivisor, StabilityKind,
};
use tropjac_core::{Error, Rat};

#[test]
fn canonical_polarization_theta() {
    let g = theta();
    let p = canon(&g, -1);
    assert_eq!(p.mu, vec![rr(-1, 2), rr(-1, 2)]);
    assert_eq!(p.degree(), rat(-1));
    // Degree 2 - 2g scales linearly.
    let p2 = canon(&g, 2);
    assert_eq!(p2.mu, vec![rat(1), rat(1)]);
}

#[test]
fn canonical_polarization_needs_genus_two() {
    assert!(matches!(
        canonical_polarization(&two_cycle(), 1),
        Err(Error::GenusTooSmall { genus: 1 })
    ));
    assert!(matches!(
        canonical_polarization(&path(3), 0),
        Err(Error::GenusTooSmall { genus: 0 })
    ));
}

#[test]
fn beta_values_on_theta() {
    let g = theta();
    let p = canon(&g, -1);
    let a = pd(&[], &[0, -1]);
    assert_eq!(beta(&g, &p, &a, VertexSet::singleton(0)).unwrap(), rat(2));
    assert_eq!(beta(&g, &p, &a, VertexSet::singleton(1)).unwrap(), rat(1));
    assert_eq!(beta(&g, &p, &a, VertexSet::full(2)).unwrap(), zero());

    let b = pd(&[0, 1, 2], &[1, 1]);
    assert_eq!(beta(&g, &p, &b, VertexSet::singleton(0)).unwrap(), zero());
    assert_eq!(beta(&g, &p, &b, VertexSet::singleton(1)).unwrap(), zero());

    let c = pd(&[], &[1, -2]);
    assert_eq!(beta(&g, &p, &c, VertexSet::singleton(1)).unwrap(), zero());
    assert_eq!(beta(&g, &p, &c, VertexSet::singleton(0)).unwrap(), rat(3));
}

#[test]
fn predicate_table_on_theta() {
    let g = theta();
    let p = canon(&g, -1);

    // Stable, hence everything else.
    let a = pd(&[], &[0, -1]);
    assert!(is_stable(&g, &p, &a).unwrap().0);
    assert!(is_semistable(&g, &p, &a).unwrap().0);
    assert!(is_polystable(&g, &p, &a).unwrap().0);
    assert!(is_quasistable(&g, &p, &a, 0).unwrap().0);
    assert!(is_quasistable(&g, &p, &a, 1).unwrap().0);

    // Semistable only: zero slack on {v1} whose boundary is unmarked.
    let b = pd(&[], &[1, -2]);
    assert!(is_semistable(&g, &p, &b).unwrap().0);
    assert!(!is_stable(&g, &p, &b).unwrap().0);
    let (poly, witness) = is_polystable(&g, &p, &b).unwrap();
    assert!(!poly);
    assert_eq!(witness, Some(VertexSet::singleton(1)));
    assert!(is_quasistable(&g, &p, &b, 0).unwrap().0);
    assert!(!is_quasistable(&g, &p, &b, 1).unwrap().0);

    // Polystable but not stable or quasistable: the fully marked type.
    let c = pd(&[0, 1, 2], &[1, 1]);
    assert!(is_polystable(&g, &p, &c).unwrap().0);
    assert!(!is_stable(&g, &p, &c).unwrap().0);
    assert!(!is_quasistable(&g, &p, &c, 0).unwrap().0);

    // Polystable and quasistable: one marked edge, zero values.
    let d = pd(&[1], &[0, 0]);
    assert!(is_polystable(&g, &p, &d).unwrap().0);
    assert!(is_quasistable(&g, &p, &d, 0).unwrap().0);

    // Not semistable at all.
    let e = pd(&[], &[3, -4]);
    let (semi, witness) = is_semistable(&g, &p, &e).unwrap();
    assert!(!semi);
    assert_eq!(witness, Some(VertexSet::singleton(1)));
}

#[test]
fn degree_guard() {
    let g = theta();
    let p = canon(&g, -1);
    let wrong = pd(&[], &[0, 0]);
    assert!(matches!(
        is_semistable(&g, &p, &wrong),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn quasistable_needs_connected_graph() {
    let g = tropjac_core::graph::WeightedGraph::new(vec![2, 2], vec![]).unwrap();
    let p = Polarization::new(vec![rat(0), rat(0)]);
    let a = pd(&[], &[0, 0]);
    assert!(matches!(is_quasistable(&g, &p, &a, 0), Err(Error::NotConnected)));
}

#[test]
fn theta_polystable_enumeration() {
    let g = theta();
    let p = canon(&g, -1);
    let ps = enumerate_pseudo_divisors(&g, &p, StabilityKind::Polystable, -1).unwrap();
    let expected = vec![
        pd(&[], &[-1, 0]),
        pd(&[], &[0, -1]),
        pd(&[0], &[0, 0]),
        pd(&[1], &[0, 0]),
        pd(&[2], &[0, 0]),
        pd(&[0, 1, 2], &[1, 1]),
    ];
    assert_eq!(ps, expected);
    let ranks: Vec<usize> = ps.iter().map(|x| rank(&g, x).unwrap()).collect();
    assert_eq!(ranks, vec![0, 0, 1, 1, 1, 2]);
}

#[test]
fn theta_quasistable_enumeration() {
    let g = theta();
    let p = canon(&g, -1);
    let qs = enumerate_pseudo_divisors(&g, &p, StabilityKind::Quasistable(0), -1).unwrap();
    assert_eq!(qs.len(), 12);
    let mut by_rank = [0usize; 3];
    for x in &qs {
        by_rank[rank(&g, x).unwrap()] += 1;
    }
    assert_eq!(by_rank, [3, 6, 3]);
    // Quasistable-not-polystable elements all put the extra degree on v0.
    let ps = enumerate_pseudo_divisors(&g, &p, StabilityKind::Polystable, -1).unwrap();
    let not_poly: Vec<_> = qs.iter().filter(|x| !ps.contains(x)).collect();
    assert_eq!(not_poly.len(), 7);
    for x in &not_poly {
        assert_eq!(x.values[0], 1);
    }
}

#[test]
fn theta_other_kinds_counts() {
    let g = theta();
    let p = canon(&g, -1);
    let ss = enumerate_pseudo_divisors(&g, &p, StabilityKind::Semistable, -1).unwrap();
    assert_eq!(ss.len(), 20);
    let st = enumerate_pseudo_divisors(&g, &p, StabilityKind::Stable, -1).unwrap();
    assert_eq!(st, vec![pd(&[], &[-1, 0]), pd(&[], &[0, -1])]);
    // Every stable element is polystable and quasistable for any base.
    for x in &st {
        assert!(is_polystable(&g, &p, x).unwrap().0);
        assert!(is_quasistable(&g, &p, x, 0).unwrap().0);
        assert!(is_quasistable(&g, &p, x, 1).unwrap().0);
    }
}

#[test]
fn specialization_witness_structure() {
    let g = theta();
    let top = pd(&[0, 1, 2], &[1, 1]);
    let mid = pd(&[2], &[0, 0]);
    // Two ways to retire the points on e0 and e1 onto distinct vertices.
    let ws = specialization_witnesses(&g, &top, &mid).unwrap();
    assert_eq!(ws.len(), 2);
    for w in &ws {
        let edges: Vec<usize> = w.iter().map(|&(e, _)| e).collect();
        assert_eq!(edges, vec![0, 1]);
        let mut drop = vec![0i64; 2];
        for &(_, v) in w {
            drop[v] += 1;
        }
        assert_eq!(drop, vec![1, 1]);
    }
    // No witness when the value bookkeeping cannot match.
    let bad = pd(&[2], &[0, 1]);
    assert!(specializes_to(&g, &top, &bad).unwrap().is_none());
    // Marked sets must nest.
    let other = pd(&[0], &[1, 0]);
    assert!(specializes_to(&g, &mid, &other).unwrap().is_none());
}

#[test]
fn specialization_is_a_partial_order_on_theta_semistables() {
    let g = theta();
    let p = canon(&g, -1);
    let ss = enumerate_pseudo_divisors(&g, &p, StabilityKind::Semistable, -1).unwrap();
    for a in &ss {
        assert!(specializes_to(&g, a, a).unwrap().is_some());
        for b in &ss {
            let down = specializes_to(&g, a, b).unwrap().is_some();
            let up = specializes_to(&g, b, a).unwrap().is_some();
            if down && up {
                assert_eq!(a, b);
            }
            for c in &ss {
                if down && specializes_to(&g, b, c).unwrap().is_some() {
                    assert!(specializes_to(&g, a, c).unwrap().is_some());
                }
            }
        }
    }
}

#[test]
fn interpolation_can_be_ambiguous() {
    let g = theta();
    let top = pd(&[0, 1, 2], &[1, 1]);
    let bottom = pd(&[], &[0, -1]);
    let through = EdgeSet::from_indices(&[2]);
    let all = interpolate_all(&g, &top, &bottom, through).unwrap();
    assert_eq!(all, vec![pd(&[2], &[0, 0]), pd(&[2], &[1, -1])]);
    assert!(matches!(
        interpolate(&g, &top, &bottom, through),
        Err(Error::AmbiguousInterpolation)
    ));
    // Through the full marked set the interpolant is the top itself.
    assert_eq!(interpolate(&g, &top, &bottom, top.edges).unwrap(), top);
}

#[test]
fn loops_specialize_at_a_single_endpoint() {
    let g = dumbbell();
    let top = pd(&[0], &[1, 0]);
    let bottom = pd(&[], &[0, 0]);
    let ws = specialization_witnesses(&g, &top, &bottom).unwrap();
    assert_eq!(ws, vec![vec![(0, 0)]]);
}

#[test]
fn rank_formula() {
    let g = theta();
    assert_eq!(rank(&g, &pd(&[], &[0, -1])).unwrap(), 0);
    assert_eq!(rank(&g, &pd(&[0], &[0, 0])).unwrap(), 1);
    // Deleting two of the three parallel edges keeps the graph connected,
    // so both marked points vary freely.
    assert_eq!(rank(&g, &pd(&[0, 1], &[1, 0])).unwrap(), 2);
    assert_eq!(rank(&g, &pd(&[0, 1, 2], &[1, 1])).unwrap(), 2);
    let d = dumbbell();
    // A loop never disconnects: each marked loop adds one to the rank.
    assert_eq!(rank(&d, &pd(&[0], &[0, 0])).unwrap(), 1);
    assert_eq!(rank(&d, &pd(&[0, 2], &[0, 0])).unwrap(), 2);
    assert_eq!(rank(&d, &pd(&[1], &[1, 0])).unwrap(), 0);
}

#[test]
fn pushforward_keeps_degree_and_stability() {
    let g = theta();
    let p = canon(&g, -1);
    let spec = g.contract(EdgeSet::from_indices(&[0]));
    let q = pushforward_polarization(&spec, &p).unwrap();
    assert_eq!(q.degree(), p.degree());
    for x in enumerate_pseudo_divisors(&g, &p, StabilityKind::Polystable, -1).unwrap() {
        let y = pushforward_pd(&spec, &x).unwrap();
        assert_eq!(y.degree(), x.degree());
        assert!(
            is_polystable(&spec.target, &q, &y).unwrap().0,
            "pushforward of {} lost polystability",
            format_pd(&x)
        );
    }
}

#[test]
fn format_is_stable_and_readable() {
    assert_eq!(format_pd(&pd(&[0, 2], &[1, -1])), "E={0,2} D=(1,-1)");
    assert_eq!(format_pd(&pd(&[], &[0])), "E={} D=(0)");
}

/// A small pool of (graph, polarization, pseudo-divisor) triples with the
/// right degrees, for the algebraic property tests.
fn triples() -> Vec<(tropjac_core::graph::WeightedGraph, Polarization, PseudoDivisor)> {
    let mut out = Vec::new();
    for g in small_corpus(3, 4) {
        if g.genus() < 2 {
            continue;
        }
        for d in [-1i64, 0, 1] {
            let p = canon(&g, d);
            for kind in [StabilityKind::Semistable, StabilityKind::Polystable] {
                for x in enumerate_pseudo_divisors(&g, &p, kind, d).unwrap() {
                    out.push((g.clone(), p.clone(), x));
                }
            }
        }
    }
    out
}

#[test]
fn beta_engine_routes_agree() {
    for (g, p, x) in triples() {
        let engine = BetaEngine::new(&g, &p);
        let full = VertexSet::full(g.n_vertices()).0;
        for bits in 1..full {
            let v = VertexSet(bits);
            let exact = beta(&g, &p, &x, v).unwrap();
            let sign = engine.beta_sign(&g, x.edges, &x.values, v);
            let expect = if exact > zero() {
                1
            } else if exact < zero() {
                -1
            } else {
                0
            };
            assert_eq!(sign, expect, "engine sign mismatch on {}", format_pd(&x));
        }
    }
}

#[test]
fn beta_is_submodular_with_exact_correction() {
    // beta(V u W) + beta(V n W) = beta(V) + beta(W) - |E(V\W, W\V) \ marked|
    for (g, p, x) in triples() {
        let full = VertexSet::full(g.n_vertices()).0;
        for vb in 1..=full {
            for wb in 1..=full {
                let (v, w) = (VertexSet(vb), VertexSet(wb));
                let union = v.union(w);
                let inter = v.intersection(w);
                let lhs = beta(&g, &p, &x, union).unwrap() + beta(&g, &p, &x, inter).unwrap();
                let cross = g
                    .cut_between(v.difference(w), w.difference(v))
                    .difference(x.edges)
                    .len() as i64;
                let rhs = beta(&g, &p, &x, v).unwrap() + beta(&g, &p, &x, w).unwrap() - rat(cross);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn beta_complement_identity() {
    // beta(V) + beta(V^c) counts the unmarked boundary of V.
    for (g, p, x) in triples() {
        let n = g.n_vertices();
        let full = VertexSet::full(n).0;
        for bits in 1..full {
            let v = VertexSet(bits);
            let (cut, _) = g.cut_and_delta(v);
            let unmarked = cut.difference(x.edges).len() as i64;
            let sum = beta(&g, &p, &x, v).unwrap() + beta(&g, &p, &x, v.complement(n)).unwrap();
            assert_eq!(sum, rat(unmarked));
        }
    }
}

#[test]
fn value_bounds_bracket_enumeration() {
    for (g, p, x) in triples() {
        let engine = BetaEngine::new(&g, &p);
        for u in 0..g.n_vertices() {
            let (lo, hi) = engine.value_bounds(&g, x.edges, u);
            assert!(
                (lo..=hi).contains(&x.values[u]),
                "bounds [{lo},{hi}] miss {} at vertex {u}",
                format_pd(&x)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Integer-denominator polarizations keep the fast and exact
    /// beta evaluators in agreement on random inputs.
    #[test]
    fn beta_engine_agrees_on_random_polarizations(
        nums in proptest::collection::vec(-6i64..=6, 2),
        values in proptest::collection::vec(-4i64..=4, 2),
        edge_bits in 0u64..8,
    ) {
        let g = theta();
        let den = 3i64;
        let mut mu: Vec<Rat> = nums.iter().map(|&n| rr(n, den)).collect();
        // Patch the degree so it matches the divisor exactly.
        let es = EdgeSet(edge_bits);
        let x = PseudoDivisor::new(es, values.clone());
        let want = rat(x.degree());
        let have: Rat = mu.iter().sum();
        let fix = want - have;
        mu[0] += fix;
        let p = Polarization::new(mu);
        let engine = BetaEngine::new(&g, &p);
        for bits in 1u32..3 {
            let v = VertexSet(bits);
            let exact = beta(&g, &p, &x, v).unwrap();
            let sign = engine.beta_sign(&g, x.edges, &x.values, v);
            let expect = if exact > zero() { 1 } else if exact < zero() { -1 } else { 0 };
            prop_assert_eq!(sign, expect);
        }
    }
}
