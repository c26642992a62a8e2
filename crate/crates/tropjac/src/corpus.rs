//! The deterministic fixture corpus.
//!
//! Every connected multigraph up to a given size, one representative per
//! isomorphism class in a stable order, equipped with polarizations for the
//! standard degrees and seeded rational edge lengths. The three named
//! fixtures that the examples keep returning to are tagged with aliases so
//! tools can find them inside the enumeration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropjac_core::graph::{Edge, WeightedGraph};
use tropjac_core::rat::ratio;
use tropjac_core::stability::{canonical_polarization, Polarization};
use tropjac_core::Rat;

use crate::{CliError, CliResult};

/// Largest vertex count the exhaustive enumeration accepts.
pub const CORPUS_MAX_VERTICES: usize = 5;
/// Largest edge count the exhaustive enumeration accepts.
pub const CORPUS_MAX_EDGES: usize = 8;

/// Two vertices joined by three parallel edges (genus 2).
pub fn theta() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![Edge::new(0, 1), Edge::new(0, 1), Edge::new(0, 1)])
        .expect("fixture fits the guards")
}

/// Loop, bridge, loop on two vertices (genus 2).
pub fn dumbbell() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], vec![Edge::new(0, 0), Edge::new(0, 1), Edge::new(1, 1)])
        .expect("fixture fits the guards")
}

/// Two vertices joined by four parallel edges (genus 3).
pub fn two_vertex_four_edge() -> WeightedGraph {
    WeightedGraph::new(vec![0, 0], (0..4).map(|_| Edge::new(0, 1)).collect())
        .expect("fixture fits the guards")
}

/// The polarization a corpus fixture carries for degree `d`: canonical when
/// the genus admits it, the uniform split `d/n` otherwise.
pub fn corpus_polarization(g: &WeightedGraph, d: i64) -> Polarization {
    if g.genus() >= 2 {
        canonical_polarization(g, d).expect("genus at least two")
    } else {
        let n = g.n_vertices() as i64;
        Polarization::new((0..n).map(|_| ratio(d, n)).collect())
    }
}

/// All connected multigraphs (weights zero, loops allowed) with at most
/// `max_v` vertices and `max_e` edges, one per isomorphism class, ordered
/// by vertex count, then edge count, then enumeration order.
pub fn connected_multigraphs(max_v: usize, max_e: usize) -> CliResult<Vec<WeightedGraph>> {
    if max_v > CORPUS_MAX_VERTICES {
        return Err(CliError::Guard(format!(
            "corpus vertices = {max_v} exceeds supported maximum {CORPUS_MAX_VERTICES}"
        )));
    }
    if max_e > CORPUS_MAX_EDGES {
        return Err(CliError::Guard(format!(
            "corpus edges = {max_e} exceeds supported maximum {CORPUS_MAX_EDGES}"
        )));
    }
    let mut out: Vec<WeightedGraph> = Vec::new();
    for n in 1..=max_v {
        // Unordered vertex pairs (i <= j); a multigraph is a multiset over
        // them, encoded as one multiplicity per pair.
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        for m in n.saturating_sub(1)..=max_e {
            let mut counts = vec![0usize; pairs.len()];
            enumerate_multisets(&mut counts, 0, m, &mut |counts| {
                let mut edges = Vec::new();
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    for _ in 0..counts[k] {
                        edges.push(Edge::new(i, j));
                    }
                }
                let g = WeightedGraph::new(vec![0; n], edges).expect("guarded size");
                if !g.is_connected() {
                    return;
                }
                if out.iter().any(|h| !h.isomorphisms(&g).unwrap_or_default().is_empty()) {
                    return;
                }
                out.push(g);
            });
        }
    }
    Ok(out)
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

/// One polarization attached to a fixture.
#[derive(Debug, Clone)]
pub struct PolarizationFixture {
    pub degree: i64,
    /// `"canonical"` or `"uniform"`, depending on whether the genus admits
    /// the canonical polarization.
    pub kind: &'static str,
    pub polarization: Polarization,
}

/// One corpus entry: a graph, its seeded edge lengths, and its
/// polarizations for the standard degrees.
#[derive(Debug, Clone)]
pub struct CorpusFixture {
    pub name: String,
    /// Set when the graph is one of the named fixtures.
    pub alias: Option<&'static str>,
    pub graph: WeightedGraph,
    pub genus: i64,
    pub lengths: Vec<Rat>,
    pub polarizations: Vec<PolarizationFixture>,
}

/// Build the corpus: graphs from [`connected_multigraphs`], lengths drawn
/// from a seeded generator (numerators 1..=6 over denominators 1..=4), and
/// polarizations for the degrees -1, 0, 1, and the genus.
pub fn generate_corpus(max_v: usize, max_e: usize, seed: u64) -> CliResult<Vec<CorpusFixture>> {
    let graphs = connected_multigraphs(max_v, max_e)?;
    let named: [(&'static str, WeightedGraph); 3] = [
        ("theta", theta()),
        ("dumbbell", dumbbell()),
        ("two_vertex_four_edge", two_vertex_four_edge()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(graphs.len());
    for (i, graph) in graphs.into_iter().enumerate() {
        let lengths: Vec<Rat> = (0..graph.n_edges())
            .map(|_| ratio(rng.gen_range(1..=6), rng.gen_range(1..=4)))
            .collect();
        let alias = named
            .iter()
            .find(|(_, h)| !graph.isomorphisms(h).unwrap_or_default().is_empty())
            .map(|&(name, _)| name);
        let genus = graph.genus();
        let mut degrees = vec![-1, 0, 1];
        if !degrees.contains(&genus) {
            degrees.push(genus);
        }
        let polarizations = degrees
            .into_iter()
            .map(|d| PolarizationFixture {
                degree: d,
                kind: if genus >= 2 { "canonical" } else { "uniform" },
                polarization: corpus_polarization(&graph, d),
            })
            .collect();
        out.push(CorpusFixture {
            name: format!("graph_{i:03}"),
            alias,
            graph,
            genus,
            lengths,
            polarizations,
        });
    }
    Ok(out)
}
