//! Shared fixtures for the integration tests: named graphs, polarization
//! and divisor constructors, and a tiny connected-multigraph corpus.
#![allow(dead_code)]

use tropjac_core::graph::{Edge, EdgeSet, WeightedGraph};
use tropjac_core::rat::{rat, ratio};
use tropjac_core::stability::{Polarization, PseudoDivisor};
use tropjac_core::Rat;

/// Two vertices joined by three parallel edges, weights zero (genus 2).
pub fn theta() -> WeightedGraph {
    WeightedGraph::new(
        vec![0, 0],
        vec![Edge::new(0, 1), Edge::new(0, 1), Edge::new(0, 1)],
    )
    .unwrap()
}

/// Loop, bridge, loop on two weight-zero vertices (genus 2).
pub fn dumbbell() -> WeightedGraph {
    WeightedGraph::new(
        vec![0, 0],
        vec![Edge::new(0, 0), Edge::new(0, 1), Edge::new(1, 1)],
    )
    .unwrap()
}

/// Two vertices joined by two parallel edges (genus 1).
pub fn two_cycle() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![Edge::new(0, 1), Edge::new(0, 1)]).unwrap()
}

/// Two vertices joined by `k` parallel edges.
pub fn parallel(k: usize) -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], (0..k).map(|_| Edge::new(0, 1)).collect()).unwrap()
}

/// Simple cycle on `k` vertices.
pub fn cycle(k: usize) -> WeightedGraph {
    WeightedGraph::new(
        vec![0; k],
        (0..k).map(|i| Edge::new(i, (i + 1) % k)).collect(),
    )
    .unwrap()
}

/// Path on `k` vertices (a tree).
pub fn path(k: usize) -> WeightedGraph {
    WeightedGraph::new(vec![0; k], (0..k - 1).map(|i| Edge::new(i, i + 1)).collect()).unwrap()
}

/// Single vertex of weight `w` with `loops` loops.
pub fn bouquet(w: u32, loops: usize) -> WeightedGraph {
    WeightedGraph::new(vec![w], (0..loops).map(|_| Edge::new(0, 0)).collect()).unwrap()
}

/// Rational from a pair.
pub fn rr(p: i64, q: i64) -> Rat {
    ratio(p, q)
}

/// Polarization from (numerator, denominator) pairs.
pub fn mu(vals: &[(i64, i64)]) -> Polarization {
    Polarization::new(vals.iter().map(|&(p, q)| ratio(p, q)).collect())
}

/// The canonical polarization of a graph for total degree `d`.
pub fn canon(g: &WeightedGraph, d: i64) -> Polarization {
    tropjac_core::stability::canonical_polarization(g, d).unwrap()
}

/// Pseudo-divisor from marked-edge indices and vertex values.
pub fn pd(edges: &[usize], values: &[i64]) -> PseudoDivisor {
    PseudoDivisor::new(EdgeSet::from_indices(edges), values.to_vec())
}

/// Rational vector from integers.
pub fn rv(vals: &[i64]) -> Vec<Rat> {
    vals.iter().map(|&v| rat(v)).collect()
}

/// Uniform polarization `d/n` on each vertex, the fallback when the
/// canonical one is undefined (genus one).
pub fn uniform(g: &WeightedGraph, d: i64) -> Polarization {
    let n = g.n_vertices() as i64;
    Polarization::new((0..n).map(|_| ratio(d, n)).collect())
}

/// Canonical polarization when defined, uniform otherwise.
pub fn corpus_polarization(g: &WeightedGraph, d: i64) -> Polarization {
    if g.genus() != 1 {
        canon(g, d)
    } else {
        uniform(g, d)
    }
}

/// All connected multigraphs (weights zero, loops allowed) with at most
/// `max_v` vertices and `max_e` edges, up to isomorphism, in a stable order.
pub fn small_corpus(max_v: usize, max_e: usize) -> Vec<WeightedGraph> {
    let mut out: Vec<WeightedGraph> = Vec::new();
    for n in 1..=max_v {
        // Unordered vertex pairs (i <= j), loops included.
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let min_edges = n.saturating_sub(1);
        for m in min_edges..=max_e {
            let mut counts = vec![0usize; pairs.len()];
            enumerate_multisets(&mut counts, 0, m, &mut |counts| {
                let mut edges = Vec::new();
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    for _ in 0..counts[k] {
                        edges.push(Edge::new(i, j));
                    }
                }
                let g = WeightedGraph::new(vec![0; n], edges).unwrap();
                if !g.is_connected() {
                    return;
                }
                if out
                    .iter()
                    .any(|h| !h.isomorphisms(&g).unwrap_or_default().is_empty())
                {
                    return;
                }
                out.push(g);
            });
        }
    }
    out
}

fn enumerate_multisets(
    counts: &mut Vec<usize>,
    from: usize,
    remaining: usize,
    f: &mut impl FnMut(&Vec<usize>),
) {
    if remaining == 0 {
        f(counts);
        return;
    }
    if from == counts.len() {
        return;
    }
    for take in (0..=remaining).rev() {
        counts[from] = take;
        enumerate_multisets(counts, from + 1, remaining - take, f);
    }
    counts[from] = 0;
}
