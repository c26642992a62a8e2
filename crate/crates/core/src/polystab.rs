//! Polystabilization and stability posets.
//!
//! `saturate` performs one correction step on a semistable pseudo-divisor
//! whose slack vanishes on a subset with unmarked boundary edges;
//! `polystabilize` iterates it to the unique minimal polystable element
//! above. `quasistable_lift` walks the other way, producing the quasistable
//! representative over a polystable one. Posets of pseudo-divisors under
//! specialization round out the module, including the genus-level poset over
//! all stable weighted graphs.

use crate::graph::{Edge, EdgeSet, GraphIso, VertexSet, WeightedGraph};
use crate::stability::{
    self, canonical_polarization, enumerate_pseudo_divisors, is_polystable, is_semistable,
    specializes_to, BetaEngine, Polarization, PseudoDivisor, StabilityKind,
};
use crate::{Error, Result};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// One saturation step: the subset whose slack vanished and the boundary
/// edges that became marked. The new -1 points start at the `violating`-side
/// endpoint of each added edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationStep {
    pub violating: VertexSet,
    pub added: EdgeSet,
}

/// The subsets eligible for saturation: zero slack and boundary not entirely
/// marked, ascending as bitmasks.
pub fn violating_subsets(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<Vec<VertexSet>> {
    let engine = BetaEngine::new(g, p);
    let n = g.n_vertices();
    let full = VertexSet::full(n).0;
    let mut out = Vec::new();
    for bits in 1..full {
        let v = VertexSet(bits);
        if engine.beta_sign(g, pd.edges, &pd.values, v) == 0 {
            let (cut, _) = g.cut_and_delta(v);
            if !cut.is_subset_of(pd.edges) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Saturate a semistable pseudo-divisor at `v`: mark every unmarked boundary
/// edge of `v` and raise the value of its `v`-side endpoint by one. The
/// result is the unique semistable pseudo-divisor with the enlarged marked
/// set lying strictly above the input.
pub fn saturate(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
    v: VertexSet,
) -> Result<(PseudoDivisor, SaturationStep)> {
    let (semi, _) = is_semistable(g, p, pd)?;
    if !semi {
        return Err(Error::Precondition("saturation needs a semistable pseudo-divisor"));
    }
    let slack = stability::beta(g, p, pd, v)?;
    if !num_traits::Zero::is_zero(&slack) {
        return Err(Error::Precondition("saturation needs zero slack on the subset"));
    }
    let (cut, _) = g.cut_and_delta(v);
    let added = cut.difference(pd.edges);
    if added.is_empty() {
        return Err(Error::Precondition("subset boundary is already entirely marked"));
    }
    let mut values = pd.values.clone();
    for i in added.iter() {
        let e = g.edge(i);
        let inside = if v.contains(e.s) { e.s } else { e.t };
        values[inside] += 1;
    }
    let out = PseudoDivisor::new(pd.edges.union(added), values);
    debug_assert_eq!(out.degree(), pd.degree());
    debug_assert!(is_semistable(g, p, &out).map(|(ok, _)| ok).unwrap_or(false));
    debug_assert!(specializes_to(g, &out, pd).map(|w| w.is_some()).unwrap_or(false));
    Ok((out, SaturationStep { violating: v, added }))
}

/// Polystabilize: repeatedly saturate the lexicographically smallest
/// violating subset until the pseudo-divisor is polystable. Returns the
/// polystable result together with the saturation chain.
pub fn polystabilize(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<(PseudoDivisor, Vec<SaturationStep>)> {
    polystabilize_with(g, p, pd, &mut |_| 0)
}

/// Polystabilize with an explicit choice of violating subset at each step
/// (`chooser` picks an index into the ascending list). The result is
/// independent of the choices; the hook exists so tests can prove that.
pub fn polystabilize_with(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
    chooser: &mut dyn FnMut(&[VertexSet]) -> usize,
) -> Result<(PseudoDivisor, Vec<SaturationStep>)> {
    let (semi, witness) = is_semistable(g, p, pd)?;
    if !semi {
        let _ = witness;
        return Err(Error::Precondition("polystabilization needs a semistable pseudo-divisor"));
    }
    let mut current = pd.clone();
    let mut chain = Vec::new();
    loop {
        let violating = violating_subsets(g, p, &current)?;
        if violating.is_empty() {
            break;
        }
        let pick = chooser(&violating).min(violating.len() - 1);
        let (next, step) = saturate(g, p, &current, violating[pick])?;
        current = next;
        chain.push(step);
        assert!(chain.len() <= g.n_edges(), "saturation must terminate");
    }
    debug_assert!(is_polystable(g, p, &current)?.0);
    Ok((current, chain))
}

/// Endpoint assignment accumulated along a saturation chain: for every edge
/// marked during the chain, the endpoint its -1 conceptually starts at.
pub fn saturation_assignment(g: &WeightedGraph, chain: &[SaturationStep]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for step in chain {
        for i in step.added.iter() {
            let e = g.edge(i);
            let inside = if step.violating.contains(e.s) { e.s } else { e.t };
            out.push((i, inside));
        }
    }
    out.sort();
    out
}

/// The quasistable pseudo-divisor lying over a polystable one: contract
/// everything outside the marked set, take the spanning tree of the result
/// rooted at the base vertex's image, and retire each tree edge's -1 into its
/// far endpoint.
pub fn quasistable_lift(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
    v0: usize,
) -> Result<PseudoDivisor> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let (poly, _) = is_polystable(g, p, pd)?;
    if !poly {
        return Err(Error::Precondition("quasistable lift needs a polystable pseudo-divisor"));
    }
    if v0 >= g.n_vertices() {
        return Err(Error::IndexOutOfRange { what: "base vertex", index: v0, len: g.n_vertices() });
    }
    let spec = g.contract(g.all_edges().difference(pd.edges));
    let tree = spec.target.spanning_tree(spec.vertex_map[v0])?;
    let mut values = pd.values.clone();
    let mut tree_src = EdgeSet::EMPTY;
    for &(j, forward) in &tree.forward {
        let src = spec.edge_map[j];
        tree_src.insert(src);
        let far = if forward { spec.target.edge(j).t } else { spec.target.edge(j).s };
        let e = g.edge(src);
        let head = if spec.vertex_map[e.s] == far { e.s } else { e.t };
        debug_assert_ne!(spec.vertex_map[e.s], spec.vertex_map[e.t]);
        values[head] -= 1;
    }
    let out = PseudoDivisor::new(pd.edges.difference(tree_src), values);
    debug_assert_eq!(out.degree(), pd.degree());
    Ok(out)
}

/// Finite poset given by its order relation, with Hasse covers derived.
/// `leq[i * n + j]` holds when element `i` is below element `j`.
#[derive(Debug, Clone)]
pub struct Poset {
    pub n: usize,
    pub leq: Vec<bool>,
    /// `(upper, lower)` pairs with nothing strictly between.
    pub covers: Vec<(usize, usize)>,
}

impl Poset {
    pub fn from_leq(n: usize, leq: Vec<bool>) -> Poset {
        assert_eq!(leq.len(), n * n);
        let lt = |i: usize, j: usize| i != j && leq[i * n + j];
        let mut covers = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if lt(i, j) && !(0..n).any(|c| lt(i, c) && lt(c, j)) {
                    covers.push((j, i));
                }
            }
        }
        covers.sort();
        Poset { n, leq, covers }
    }

    /// Build from cover pairs `(upper, lower)`; the relation is the
    /// reflexive-transitive closure.
    pub fn from_covers(n: usize, covers: Vec<(usize, usize)>) -> Poset {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(up, lo) in &covers {
            leq[lo * n + up] = true;
        }
        // Floyd–Warshall style closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut covers = covers;
        covers.sort();
        Poset { n, leq, covers }
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn covers_of(&self, lower: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |&&(_, lo)| lo == lower).map(|&(up, _)| up)
    }

    pub fn covered_by(&self, upper: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |&&(up, _)| up == upper).map(|&(_, lo)| lo)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.covers.iter().all(|&(_, lo)| lo != i)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.covers.iter().all(|&(up, _)| up != i)).collect()
    }

    fn chain_lengths_up(&self) -> Vec<BTreeSet<usize>> {
        let mut memo: Vec<Option<BTreeSet<usize>>> = vec![None; self.n];
        fn go(p: &Poset, i: usize, memo: &mut Vec<Option<BTreeSet<usize>>>) -> BTreeSet<usize> {
            if let Some(s) = &memo[i] {
                return s.clone();
            }
            let ups: Vec<usize> = p.covers_of(i).collect();
            let mut set = BTreeSet::new();
            if ups.is_empty() {
                set.insert(0);
            } else {
                for u in ups {
                    for l in go(p, u, memo) {
                        set.insert(l + 1);
                    }
                }
            }
            memo[i] = Some(set.clone());
            set
        }
        (0..self.n).map(|i| go(self, i, &mut memo)).collect()
    }

    fn chain_lengths_down(&self) -> Vec<BTreeSet<usize>> {
        let mut memo: Vec<Option<BTreeSet<usize>>> = vec![None; self.n];
        fn go(p: &Poset, i: usize, memo: &mut Vec<Option<BTreeSet<usize>>>) -> BTreeSet<usize> {
            if let Some(s) = &memo[i] {
                return s.clone();
            }
            let downs: Vec<usize> = p.covered_by(i).collect();
            let mut set = BTreeSet::new();
            if downs.is_empty() {
                set.insert(0);
            } else {
                for d in downs {
                    for l in go(p, d, memo) {
                        set.insert(l + 1);
                    }
                }
            }
            memo[i] = Some(set.clone());
            set
        }
        (0..self.n).map(|i| go(self, i, &mut memo)).collect()
    }
}

/// Outcome of the ranked/connectivity verification of a poset.
#[derive(Debug, Clone)]
pub struct PosetReport {
    /// All maximal chains share one length.
    pub is_ranked: bool,
    /// That common length, when ranked.
    pub length: Option<usize>,
    /// Rank of each element (longest chain from a minimal element), always
    /// computed; equals the grading when ranked.
    pub ranks: Vec<usize>,
    /// Every pair of maximal elements is linked through shared
    /// codimension-one elements.
    pub codim1_connected: bool,
    /// One connecting path per BFS tree edge: `(max_a, codim1, max_b)`.
    pub witness_paths: Vec<(usize, usize, usize)>,
    /// Human-readable violations, empty when everything holds.
    pub failures: Vec<String>,
}

/// Check that every maximal chain of the poset has the same length and that
/// its maximal elements are connected in codimension one.
pub fn verify_ranked_and_connected(poset: &Poset) -> PosetReport {
    let up = poset.chain_lengths_up();
    let down = poset.chain_lengths_down();
    let mut failures = Vec::new();
    let mut lengths: BTreeSet<usize> = BTreeSet::new();
    for i in 0..poset.n {
        for d in &down[i] {
            for u in &up[i] {
                lengths.insert(d + u);
            }
        }
    }
    let is_ranked = lengths.len() <= 1;
    if !is_ranked {
        failures.push(format!("maximal chain lengths differ: {:?}", lengths));
    }
    let length = if is_ranked { lengths.iter().next().copied() } else { None };
    let ranks: Vec<usize> =
        (0..poset.n).map(|i| down[i].iter().max().copied().unwrap_or(0)).collect();

    // Codimension-one connectivity between maximal elements.
    let maxima = poset.maximal_elements();
    let codim1: Vec<usize> =
        (0..poset.n).filter(|&i| up[i].contains(&1) && up[i].iter().all(|&l| l == 1)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); maxima.len()];
    let mut bridge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ai, &a) in maxima.iter().enumerate() {
        for (bi, &b) in maxima.iter().enumerate().skip(ai + 1) {
            if let Some(&x) = codim1.iter().find(|&&x| poset.le(x, a) && poset.le(x, b)) {
                adj[ai].push(bi);
                adj[bi].push(ai);
                bridge.insert((ai, bi), x);
            }
        }
    }
    let mut seen = vec![false; maxima.len()];
    let mut witness_paths = Vec::new();
    if !maxima.is_empty() {
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let a = queue[qi];
            qi += 1;
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    let key = if a < b { (a, b) } else { (b, a) };
                    witness_paths.push((maxima[a], bridge[&key], maxima[b]));
                    queue.push(b);
                }
            }
        }
    }
    let codim1_connected = seen.iter().all(|&s| s);
    if !codim1_connected {
        failures.push(format!(
            "maximal elements not connected through codimension one: reached {} of {}",
            seen.iter().filter(|&&s| s).count(),
            maxima.len()
        ));
    }
    PosetReport { is_ranked, length, ranks, codim1_connected, witness_paths, failures }
}

/// The poset of pseudo-divisors of one stability kind on a fixed graph.
#[derive(Debug, Clone)]
pub struct StabilityPoset {
    pub graph: WeightedGraph,
    pub polarization: Polarization,
    pub kind: StabilityKind,
    pub degree: i64,
    pub elements: Vec<PseudoDivisor>,
    pub poset: Poset,
    /// Rank of each element (marked edges minus deleted-graph components
    /// plus graph components).
    pub ranks: Vec<usize>,
}

impl StabilityPoset {
    /// Signed cell count `sum (-1)^rank`, the Euler characteristic of the
    /// complex the poset indexes.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().map(|&r| if r % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Cell counts by rank.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.ranks.iter().max().copied().unwrap_or(0);
        let mut f = vec![0usize; top + 1];
        for &r in &self.ranks {
            f[r] += 1;
        }
        f
    }

    pub fn index_of(&self, pd: &PseudoDivisor) -> Option<usize> {
        self.elements.iter().position(|e| e == pd)
    }
}

/// Enumerate the pseudo-divisors of the given kind and assemble their
/// specialization poset.
pub fn build_poset(
    g: &WeightedGraph,
    p: &Polarization,
    kind: StabilityKind,
    d: i64,
) -> Result<StabilityPoset> {
    let elements = enumerate_pseudo_divisors(g, p, kind, d)?;
    let n = elements.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            // leq[i][j]: elements[i] <= elements[j], i.e. j specializes to i.
            leq[i * n + j] = specializes_to(g, &elements[j], &elements[i])?.is_some();
        }
    }
    let poset = Poset::from_leq(n, leq);
    let ranks = elements.iter().map(|pd| stability::rank(g, pd)).collect::<Result<Vec<_>>>()?;
    Ok(StabilityPoset {
        graph: g.clone(),
        polarization: p.clone(),
        kind,
        degree: d,
        elements,
        poset,
        ranks,
    })
}

/// Group elements of a stability poset into orbits under the given graph
/// automorphisms. Returns, per element, its orbit id, together with the
/// number of orbits.
pub fn orbits_under(
    elements: &[PseudoDivisor],
    autos: &[GraphIso],
) -> (Vec<usize>, usize) {
    let n = elements.len();
    let mut orbit = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        if orbit[i] != usize::MAX {
            continue;
        }
        orbit[i] = next;
        let mut stack = vec![i];
        while let Some(k) = stack.pop() {
            for a in autos {
                let img = apply_iso(&elements[k], a);
                if let Some(j) = elements.iter().position(|e| *e == img) {
                    if orbit[j] == usize::MAX {
                        orbit[j] = next;
                        stack.push(j);
                    }
                }
            }
        }
        next += 1;
    }
    (orbit, next)
}

/// Apply a graph isomorphism to a pseudo-divisor.
pub fn apply_iso(pd: &PseudoDivisor, iso: &GraphIso) -> PseudoDivisor {
    let mut edges = EdgeSet::EMPTY;
    for i in pd.edges.iter() {
        edges.insert(iso.edge_map[i]);
    }
    let mut values = vec![0i64; pd.values.len()];
    for (v, &img) in iso.vertex_map.iter().enumerate() {
        values[img] = pd.values[v];
    }
    PseudoDivisor::new(edges, values)
}

/// All stable weighted graphs of the given genus, one per isomorphism class,
/// ordered by (vertex count, edge count, weights, edges). Exhaustive
/// generation; desk-scale guard on the genus.
pub fn stable_graphs(genus: i64) -> Result<Vec<WeightedGraph>> {
    if !(2..=3).contains(&genus) {
        return Err(Error::SizeGuard {
            what: "genus for stable-graph generation",
            actual: genus.max(0) as usize,
            max: 3,
        });
    }
    let max_vertices = (2 * genus - 2) as usize;
    let mut out: Vec<WeightedGraph> = Vec::new();
    for n in 1..=max_vertices {
        let mut weights = vec![0u32; n];
        loop {
            let total: i64 = weights.iter().map(|&w| w as i64).sum();
            if total <= genus {
                let b1 = genus - total;
                let m = b1 + n as i64 - 1;
                if m >= 0 {
                    let pairs: Vec<Edge> = (0..n)
                        .flat_map(|i| (i..n).map(move |j| Edge::new(i, j)))
                        .collect();
                    let mut counts = vec![0usize; pairs.len()];
                    enumerate_multisets(&pairs, &mut counts, 0, m as usize, &mut |counts| {
                        let mut edges = Vec::new();
                        for (k, &c) in counts.iter().enumerate() {
                            for _ in 0..c {
                                edges.push(pairs[k]);
                            }
                        }
                        let g = WeightedGraph::new(weights.clone(), edges).unwrap();
                        if g.is_connected()
                            && g.genus() == genus
                            && g.is_stable_graph()
                            && out.iter().all(|h| {
                                g.isomorphisms(h).map(|isos| isos.is_empty()).unwrap_or(true)
                            })
                        {
                            out.push(g);
                        }
                    });
                }
            }
            // next non-increasing weight vector with entries <= genus
            if !next_weight_vector(&mut weights, genus as u32) {
                break;
            }
        }
    }
    out.sort_by_key(|g| {
        (g.n_vertices(), g.n_edges(), g.weights().to_vec(), g.edges().iter().map(|e| (e.s, e.t)).collect::<Vec<_>>())
    });
    Ok(out)
}

fn enumerate_multisets(
    pairs: &[Edge],
    counts: &mut Vec<usize>,
    k: usize,
    remaining: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if k == pairs.len() {
        if remaining == 0 {
            f(counts);
        }
        return;
    }
    if k + 1 == pairs.len() {
        counts[k] = remaining;
        f(counts);
        counts[k] = 0;
        return;
    }
    for c in 0..=remaining {
        counts[k] = c;
        enumerate_multisets(pairs, counts, k + 1, remaining - c, f);
    }
    counts[k] = 0;
}

fn next_weight_vector(weights: &mut Vec<u32>, max: u32) -> bool {
    // non-increasing vectors over 0..=max, lexicographic successor
    let n = weights.len();
    for i in (0..n).rev() {
        let cap = if i == 0 { max } else { weights[i - 1] };
        if weights[i] < cap {
            weights[i] += 1;
            for j in i + 1..n {
                weights[j] = 0;
            }
            return true;
        }
    }
    false
}

/// One isomorphism class of the genus-level poset: a graph index and a
/// representative polystable pseudo-divisor on it.
#[derive(Debug, Clone)]
pub struct UniversalClass {
    pub graph: usize,
    pub pd: PseudoDivisor,
}

/// The poset of polystable pseudo-divisors of fixed degree across all stable
/// weighted graphs of a genus, up to isomorphism, ordered by specialization.
#[derive(Debug, Clone)]
pub struct UniversalPoset {
    pub genus: i64,
    pub degree: i64,
    pub graphs: Vec<WeightedGraph>,
    pub polarizations: Vec<Polarization>,
    pub classes: Vec<UniversalClass>,
    pub poset: Poset,
    /// Cone dimension of each class: graph edges plus pseudo-divisor rank.
    pub dims: Vec<usize>,
}

/// Build the genus-level polystable poset for the canonical polarization of
/// degree `d`.
pub fn build_universal_poset(genus: i64, d: i64) -> Result<UniversalPoset> {
    let graphs = stable_graphs(genus)?;
    let mut polarizations = Vec::new();
    let mut classes: Vec<UniversalClass> = Vec::new();
    let mut autos: Vec<Vec<GraphIso>> = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        let p = canonical_polarization(g, d)?;
        let elements = enumerate_pseudo_divisors(g, &p, StabilityKind::Polystable, d)?;
        let auto = g.automorphisms()?;
        let (orbit, n_orbits) = orbits_under(&elements, &auto);
        for o in 0..n_orbits {
            // canonical representative: least element of the orbit
            let rep = elements
                .iter()
                .zip(&orbit)
                .filter(|(_, &ob)| ob == o)
                .map(|(e, _)| e.clone())
                .min()
                .unwrap();
            classes.push(UniversalClass { graph: gi, pd: rep });
        }
        polarizations.push(p);
        autos.push(auto);
    }
    // Specialization relation between classes, possibly across graphs.
    let n = classes.len();
    let mut leq = vec![false; n * n];
    // Precompute contraction/isomorphism routes between graph pairs.
    let mut routes: BTreeMap<(usize, usize), Vec<(EdgeSet, GraphIso)>> = BTreeMap::new();
    for (i, gi) in graphs.iter().enumerate() {
        for f in gi.all_edges().subsets() {
            let spec = gi.contract(f);
            for (j, gj) in graphs.iter().enumerate() {
                if spec.target.n_vertices() != gj.n_vertices()
                    || spec.target.n_edges() != gj.n_edges()
                {
                    continue;
                }
                for iso in spec.target.isomorphisms(gj)? {
                    routes.entry((i, j)).or_default().push((f, iso));
                }
            }
        }
    }
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            if a == b {
                leq[a * n + a] = true;
                continue;
            }
            // cb <= ca iff ca specializes to cb through some route.
            let mut related = false;
            if let Some(rs) = routes.get(&(ca.graph, cb.graph)) {
                for (f, iso) in rs {
                    let spec = graphs[ca.graph].contract(*f);
                    let pushed = stability::pushforward_pd(&spec, &ca.pd)?;
                    let mapped = apply_iso(&pushed, iso);
                    if specializes_to(&graphs[cb.graph], &mapped, &cb.pd)?.is_some() {
                        related = true;
                        break;
                    }
                }
            }
            if related {
                leq[b * n + a] = true;
            }
        }
    }
    let poset = Poset::from_leq(n, leq);
    let dims = classes
        .iter()
        .map(|c| Ok(graphs[c.graph].n_edges() + stability::rank(&graphs[c.graph], &c.pd)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniversalPoset { genus, degree: d, graphs, polarizations, classes, poset, dims })
}
