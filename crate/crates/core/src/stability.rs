//! Divisor stability on weighted multigraphs.
//!
//! The central quantity is the stability slack `beta(V)` of a vertex subset:
//! the degree a pseudo-divisor carries on `V`, minus the polarization's
//! target for `V`, plus half the boundary size of `V` in the deleted graph.
//! Semistable, stable, quasistable and polystable are all thresholds on it.

use crate::graph::{EdgeSet, Specialization, VertexSet, WeightedGraph, MAX_SCAN_VERTICES};
use crate::rat::{self, rat};
use crate::{Error, Rat, Result};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// A rational vertex polarization (degree distribution target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub mu: Vec<Rat>,
}

impl Polarization {
    pub fn new(mu: Vec<Rat>) -> Polarization {
        Polarization { mu }
    }

    pub fn degree(&self) -> Rat {
        self.mu.iter().sum()
    }

    pub fn check_graph(&self, g: &WeightedGraph) -> Result<()> {
        if self.mu.len() != g.n_vertices() {
            return Err(Error::ShapeMismatch {
                what: "polarization/vertices",
                left: self.mu.len(),
                right: g.n_vertices(),
            });
        }
        Ok(())
    }
}

/// A divisor on the refinement of the graph along `edges`, carrying value -1
/// at each inserted mid-vertex. Only the values on the original vertices are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PseudoDivisor {
    pub edges: EdgeSet,
    pub values: Vec<i64>,
}

impl PseudoDivisor {
    pub fn new(edges: EdgeSet, values: Vec<i64>) -> PseudoDivisor {
        PseudoDivisor { edges, values }
    }

    /// Divisor with no marked edges.
    pub fn plain(values: Vec<i64>) -> PseudoDivisor {
        PseudoDivisor { edges: EdgeSet::EMPTY, values }
    }

    /// Total degree: vertex values plus -1 per marked edge.
    pub fn degree(&self) -> i64 {
        self.values.iter().sum::<i64>() - self.edges.len() as i64
    }

    pub fn check_graph(&self, g: &WeightedGraph) -> Result<()> {
        if self.values.len() != g.n_vertices() {
            return Err(Error::ShapeMismatch {
                what: "divisor/vertices",
                left: self.values.len(),
                right: g.n_vertices(),
            });
        }
        if !self.edges.is_subset_of(g.all_edges()) {
            return Err(Error::IndexOutOfRange {
                what: "marked edge",
                index: self.edges.indices().last().copied().unwrap_or(0),
                len: g.n_edges(),
            });
        }
        Ok(())
    }
}

/// The stability notion a predicate or an enumeration filters by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityKind {
    Semistable,
    Stable,
    /// Quasistable with respect to the given base vertex.
    Quasistable(usize),
    Polystable,
}

/// Canonical polarization of degree `d`: each vertex gets
/// `d * (2w(v) - 2 + val(v)) / (2g - 2)`. Needs genus at least 2; on a
/// disconnected graph the per-component degree must come out integral.
pub fn canonical_polarization(g: &WeightedGraph, d: i64) -> Result<Polarization> {
    let genus = g.genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall { genus });
    }
    let denom = rat(2 * genus - 2);
    let mu: Vec<Rat> = (0..g.n_vertices())
        .map(|v| rat(d) * rat(2 * g.weight(v) as i64 - 2 + g.valence(v) as i64) / denom.clone())
        .collect();
    let comp = g.components();
    let n_comp = comp.iter().max().map_or(0, |m| m + 1);
    for c in 0..n_comp {
        let total: Rat = (0..g.n_vertices()).filter(|&v| comp[v] == c).map(|v| mu[v].clone()).sum();
        if !rat::is_integer(&total) {
            return Err(Error::DegeneratePolarization { component: c });
        }
    }
    Ok(Polarization { mu })
}

/// Polarization induced on the deletion of the marked edges: each endpoint of
/// a deleted edge inherits half of it. This is the polarization against which
/// the pseudo-divisor's underlying divisor is judged on the deleted graph.
pub fn induce_on_deletion(g: &WeightedGraph, p: &Polarization, es: EdgeSet) -> Result<Polarization> {
    p.check_graph(g)?;
    let mu = (0..g.n_vertices())
        .map(|v| p.mu[v].clone() + rat(g.valence_in(v, es) as i64) * rat::half())
        .collect();
    Ok(Polarization { mu })
}

/// Polarization induced on the refinement: zero at every inserted vertex.
pub fn induce_on_refinement(
    g: &WeightedGraph,
    p: &Polarization,
    es: EdgeSet,
) -> Result<Polarization> {
    p.check_graph(g)?;
    let mut mu = p.mu.clone();
    mu.extend(core::iter::repeat(rat(0)).take(es.len()));
    Ok(Polarization { mu })
}

/// Push a polarization along a contraction by summing over vertex fibers.
pub fn pushforward_polarization(spec: &Specialization, p: &Polarization) -> Result<Polarization> {
    p.check_graph(&spec.source)?;
    let mut mu = vec![rat(0); spec.target.n_vertices()];
    for (v, &img) in spec.vertex_map.iter().enumerate() {
        mu[img] += p.mu[v].clone();
    }
    Ok(Polarization { mu })
}

/// Push a pseudo-divisor along a contraction: surviving marked edges stay
/// marked, and the -1 on each contracted marked edge is absorbed into the
/// image vertex of its endpoints.
pub fn pushforward_pd(spec: &Specialization, pd: &PseudoDivisor) -> Result<PseudoDivisor> {
    pd.check_graph(&spec.source)?;
    let surviving = pd.edges.difference(spec.contracted);
    let edges = spec.push_edge_set(surviving);
    let mut values = vec![0i64; spec.target.n_vertices()];
    for (v, &img) in spec.vertex_map.iter().enumerate() {
        values[img] += pd.values[v];
    }
    for i in pd.edges.intersection(spec.contracted).iter() {
        let e = spec.source.edge(i);
        values[spec.vertex_map[e.s]] -= 1;
    }
    let out = PseudoDivisor { edges, values };
    debug_assert_eq!(out.degree(), pd.degree());
    Ok(out)
}

/// Stability slack of the vertex subset `v`:
/// degree of the divisor on `v`, minus the deletion-induced polarization on
/// `v`, plus half the number of unmarked edges leaving `v`.
pub fn beta(g: &WeightedGraph, p: &Polarization, pd: &PseudoDivisor, v: VertexSet) -> Result<Rat> {
    p.check_graph(g)?;
    pd.check_graph(g)?;
    let mut total = rat(0);
    for u in v.iter() {
        total += rat(pd.values[u]);
        total -= p.mu[u].clone() + rat(g.valence_in(u, pd.edges) as i64) * rat::half();
    }
    let mut delta = 0i64;
    for i in g.all_edges().difference(pd.edges).iter() {
        let e = g.edge(i);
        if v.contains(e.s) != v.contains(e.t) {
            delta += 1;
        }
    }
    total += rat(delta) * rat::half();
    Ok(total)
}

/// Exact sign-evaluator for the stability slack, with an integer fast path
/// when the polarization's common denominator is small. Both routes compute
/// the same formula; the integer route just clears denominators first.
pub enum BetaEngine {
    Int {
        /// `2 * lcm-denominator * mu(v)` per vertex.
        scaled_mu: Vec<i128>,
        /// Even common scale.
        scale: i128,
    },
    Big { mu: Vec<Rat> },
}

impl BetaEngine {
    pub fn new(g: &WeightedGraph, p: &Polarization) -> BetaEngine {
        let mut lcm = BigInt::one();
        for m in &p.mu {
            lcm = lcm.lcm(m.denom());
        }
        let scale_big: BigInt = lcm * 2;
        if let Some(scale) = scale_big.to_i128() {
            if scale <= 1 << 40 {
                let mut scaled = Vec::with_capacity(g.n_vertices());
                let mut ok = true;
                for m in &p.mu {
                    let s = m * Rat::from_integer(scale_big.clone());
                    debug_assert!(s.is_integer());
                    match s.numer().to_i128() {
                        Some(v) if v.abs() <= 1 << 80 => scaled.push(v),
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    return BetaEngine::Int { scaled_mu: scaled, scale };
                }
            }
        }
        BetaEngine::Big { mu: p.mu.clone() }
    }

    /// Sign of `beta(V)` for the pseudo-divisor `(es, values)`.
    pub fn beta_sign(
        &self,
        g: &WeightedGraph,
        es: EdgeSet,
        values: &[i64],
        v: VertexSet,
    ) -> i8 {
        match self {
            BetaEngine::Int { scaled_mu, scale } => {
                let half = scale / 2;
                let mut total: i128 = 0;
                for u in v.iter() {
                    total += scale * values[u] as i128 - scaled_mu[u];
                }
                for (i, e) in g.edges().iter().enumerate() {
                    let s_in = v.contains(e.s);
                    let t_in = v.contains(e.t);
                    if es.contains(i) {
                        total -= half * ((s_in as i128) + (t_in as i128));
                    } else if s_in != t_in {
                        total += half;
                    }
                }
                total.signum() as i8
            }
            BetaEngine::Big { mu } => {
                let mut total = rat(0);
                for u in v.iter() {
                    total += rat(values[u]) - mu[u].clone();
                }
                let mut marked_ends = 0i64;
                let mut delta = 0i64;
                for (i, e) in g.edges().iter().enumerate() {
                    let s_in = v.contains(e.s);
                    let t_in = v.contains(e.t);
                    if es.contains(i) {
                        marked_ends += s_in as i64 + t_in as i64;
                    } else if s_in != t_in {
                        delta += 1;
                    }
                }
                total += rat(delta - marked_ends) * rat::half();
                rat::sign(&total)
            }
        }
    }

    /// Integer bounds `[lo, hi]` on a semistable divisor value at `u`, given
    /// the marked set: `ceil(mu_E(u) - delta_u/2) <= D(u) <= floor(mu_E(u) + delta_u/2)`.
    pub fn value_bounds(&self, g: &WeightedGraph, es: EdgeSet, u: usize) -> (i64, i64) {
        let mut delta_u = 0i64;
        let mut marked_ends = 0i64;
        for (i, e) in g.edges().iter().enumerate() {
            if e.is_loop() {
                if e.s == u && es.contains(i) {
                    marked_ends += 2;
                }
                continue;
            }
            if e.s == u || e.t == u {
                if es.contains(i) {
                    marked_ends += 1;
                } else {
                    delta_u += 1;
                }
            }
        }
        match self {
            BetaEngine::Int { scaled_mu, scale } => {
                let half = scale / 2;
                // scale * mu_E(u) = scaled_mu[u] + half * marked_ends
                let center = scaled_mu[u] + half * marked_ends as i128;
                let lo = div_ceil_i128(center - half * delta_u as i128, *scale);
                let hi = div_floor_i128(center + half * delta_u as i128, *scale);
                (lo as i64, hi as i64)
            }
            BetaEngine::Big { mu } => {
                let center = mu[u].clone() + rat(marked_ends) * rat::half();
                let spread = rat(delta_u) * rat::half();
                (rat::ceil_i64(&(center.clone() - spread.clone())), rat::floor_i64(&(center + spread)))
            }
        }
    }
}

fn div_floor_i128(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn div_ceil_i128(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

fn check_degree(g: &WeightedGraph, p: &Polarization, pd: &PseudoDivisor) -> Result<()> {
    p.check_graph(g)?;
    pd.check_graph(g)?;
    if rat(pd.degree()) != p.degree() {
        return Err(Error::DegreeMismatch {
            divisor: pd.degree(),
            polarization: p.degree().to_string(),
        });
    }
    if g.n_vertices() > MAX_SCAN_VERTICES {
        return Err(Error::SizeGuard {
            what: "subset-scan vertices",
            actual: g.n_vertices(),
            max: MAX_SCAN_VERTICES,
        });
    }
    Ok(())
}

/// Scan result of a stability predicate: whether it holds, and a violating
/// vertex subset if it does not.
pub type PredicateOutcome = (bool, Option<VertexSet>);

fn scan_predicate(
    g: &WeightedGraph,
    engine: &BetaEngine,
    pd: &PseudoDivisor,
    strict_when: impl Fn(VertexSet) -> bool,
) -> PredicateOutcome {
    let n = g.n_vertices();
    let full = VertexSet::full(n).0;
    for bits in 1..full {
        let v = VertexSet(bits);
        let sign = engine.beta_sign(g, pd.edges, &pd.values, v);
        if sign < 0 || (sign == 0 && strict_when(v)) {
            return (false, Some(v));
        }
    }
    (true, None)
}

/// Semistable: slack nonnegative on every vertex subset.
pub fn is_semistable(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<PredicateOutcome> {
    check_degree(g, p, pd)?;
    let engine = BetaEngine::new(g, p);
    Ok(scan_predicate(g, &engine, pd, |_| false))
}

/// Stable: no marked edges, and strictly positive slack on every subset that
/// is not a union of connected components (componentwise stability).
pub fn is_stable(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<PredicateOutcome> {
    check_degree(g, p, pd)?;
    if !pd.edges.is_empty() {
        return Ok((false, None));
    }
    let engine = BetaEngine::new(g, p);
    Ok(scan_predicate(g, &engine, pd, |v| {
        let (_, delta) = g.cut_and_delta(v);
        delta > 0
    }))
}

/// Quasistable for the base vertex `v0`: semistable, with strict slack on
/// every proper subset containing `v0`. Only defined on connected graphs.
pub fn is_quasistable(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
    v0: usize,
) -> Result<PredicateOutcome> {
    check_degree(g, p, pd)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if v0 >= g.n_vertices() {
        return Err(Error::IndexOutOfRange { what: "base vertex", index: v0, len: g.n_vertices() });
    }
    let engine = BetaEngine::new(g, p);
    Ok(scan_predicate(g, &engine, pd, |v| v.contains(v0)))
}

/// Polystable: semistable, with strict slack on every subset whose boundary
/// is not entirely marked (equivalently, the underlying divisor is stable on
/// the deleted graph).
pub fn is_polystable(
    g: &WeightedGraph,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<PredicateOutcome> {
    check_degree(g, p, pd)?;
    let engine = BetaEngine::new(g, p);
    Ok(scan_predicate(g, &engine, pd, |v| {
        let (cut, _) = g.cut_and_delta(v);
        !cut.is_subset_of(pd.edges)
    }))
}

/// An endpoint assignment witnessing one specialization step per lost edge.
pub type Assignment = Vec<(usize, usize)>;

/// Does `a` specialize to `b`? If so, return one witness: an assignment of
/// each edge in `a.edges \ b.edges` to one of its endpoints (where its -1
/// merges), consistent with the value differences. Deterministic: edges are
/// processed ascending, source endpoint preferred.
pub fn specializes_to(
    g: &WeightedGraph,
    a: &PseudoDivisor,
    b: &PseudoDivisor,
) -> Result<Option<Assignment>> {
    a.check_graph(g)?;
    b.check_graph(g)?;
    if !b.edges.is_subset_of(a.edges) {
        return Ok(None);
    }
    let lost: Vec<usize> = a.edges.difference(b.edges).indices();
    let mut need: Vec<i64> = (0..g.n_vertices()).map(|v| a.values[v] - b.values[v]).collect();
    if need.iter().any(|&c| c < 0) || need.iter().sum::<i64>() != lost.len() as i64 {
        return Ok(None);
    }
    let mut witness = Vec::with_capacity(lost.len());
    if search_assignment(g, &lost, 0, &mut need, &mut witness) {
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

fn search_assignment(
    g: &WeightedGraph,
    lost: &[usize],
    k: usize,
    need: &mut Vec<i64>,
    witness: &mut Assignment,
) -> bool {
    if k == lost.len() {
        return need.iter().all(|&c| c == 0);
    }
    let e = g.edge(lost[k]);
    let endpoints: &[usize] = if e.is_loop() { &[e.s] } else { &[e.s, e.t] };
    for &v in endpoints {
        if need[v] > 0 {
            need[v] -= 1;
            witness.push((lost[k], v));
            if search_assignment(g, lost, k + 1, need, witness) {
                return true;
            }
            witness.pop();
            need[v] += 1;
        }
    }
    false
}

/// All witnesses for `a` specializing to `b`.
pub fn specialization_witnesses(
    g: &WeightedGraph,
    a: &PseudoDivisor,
    b: &PseudoDivisor,
) -> Result<Vec<Assignment>> {
    a.check_graph(g)?;
    b.check_graph(g)?;
    let mut out = Vec::new();
    if !b.edges.is_subset_of(a.edges) {
        return Ok(out);
    }
    let lost: Vec<usize> = a.edges.difference(b.edges).indices();
    let mut need: Vec<i64> = (0..g.n_vertices()).map(|v| a.values[v] - b.values[v]).collect();
    if need.iter().any(|&c| c < 0) || need.iter().sum::<i64>() != lost.len() as i64 {
        return Ok(out);
    }
    let mut witness = Vec::new();
    collect_assignments(g, &lost, 0, &mut need, &mut witness, &mut out);
    Ok(out)
}

fn collect_assignments(
    g: &WeightedGraph,
    lost: &[usize],
    k: usize,
    need: &mut Vec<i64>,
    witness: &mut Assignment,
    out: &mut Vec<Assignment>,
) {
    if k == lost.len() {
        if need.iter().all(|&c| c == 0) {
            out.push(witness.clone());
        }
        return;
    }
    let e = g.edge(lost[k]);
    let endpoints: &[usize] = if e.is_loop() { &[e.s] } else { &[e.s, e.t] };
    for &v in endpoints {
        if need[v] > 0 {
            need[v] -= 1;
            witness.push((lost[k], v));
            collect_assignments(g, lost, k + 1, need, witness, out);
            witness.pop();
            need[v] += 1;
        }
    }
}

/// Interpolate a specialization `a >= b` through the intermediate marked set
/// `es`: apply each witness assignment only on `a.edges \ es` and collect the
/// results. Errors if no witness exists or if distinct witnesses produce
/// different interpolants.
pub fn interpolate(
    g: &WeightedGraph,
    a: &PseudoDivisor,
    b: &PseudoDivisor,
    es: EdgeSet,
) -> Result<PseudoDivisor> {
    let all = interpolate_all(g, a, b, es)?;
    match all.len() {
        0 => Err(Error::Precondition("no specialization between the given pseudo-divisors")),
        1 => Ok(all.into_iter().next().unwrap()),
        _ => Err(Error::AmbiguousInterpolation),
    }
}

/// All distinct interpolants through `es`, ascending.
pub fn interpolate_all(
    g: &WeightedGraph,
    a: &PseudoDivisor,
    b: &PseudoDivisor,
    es: EdgeSet,
) -> Result<Vec<PseudoDivisor>> {
    if !b.edges.is_subset_of(es) || !es.is_subset_of(a.edges) {
        return Err(Error::Precondition("intermediate edge set must sit between the two marked sets"));
    }
    let witnesses = specialization_witnesses(g, a, b)?;
    let mut out: Vec<PseudoDivisor> = Vec::new();
    for w in witnesses {
        let mut values = a.values.clone();
        for &(e, v) in &w {
            if !es.contains(e) {
                values[v] -= 1;
            }
        }
        let mid = PseudoDivisor { edges: es, values };
        debug_assert_eq!(mid.degree(), a.degree());
        if !out.contains(&mid) {
            out.push(mid);
        }
    }
    out.sort();
    Ok(out)
}

/// Rank of a pseudo-divisor: marked edges minus components of the deletion
/// plus components of the graph. This is the dimension of the cell the
/// pseudo-divisor contributes to the Jacobian decomposition.
pub fn rank(g: &WeightedGraph, pd: &PseudoDivisor) -> Result<usize> {
    pd.check_graph(g)?;
    let b0_deleted = g
        .components_in(g.all_edges().difference(pd.edges))
        .iter()
        .max()
        .map_or(0, |m| m + 1);
    Ok(pd.edges.len() + g.b0() - b0_deleted)
}

/// Enumerate every pseudo-divisor of the given degree satisfying the
/// stability predicate, ascending by (marked set, values). Finiteness comes
/// from the per-vertex slack bounds on singletons and their complements.
pub fn enumerate_pseudo_divisors(
    g: &WeightedGraph,
    p: &Polarization,
    kind: StabilityKind,
    d: i64,
) -> Result<Vec<PseudoDivisor>> {
    p.check_graph(g)?;
    if g.n_vertices() > MAX_SCAN_VERTICES {
        return Err(Error::SizeGuard {
            what: "subset-scan vertices",
            actual: g.n_vertices(),
            max: MAX_SCAN_VERTICES,
        });
    }
    if rat(d) != p.degree() {
        return Err(Error::DegreeMismatch { divisor: d, polarization: p.degree().to_string() });
    }
    if let StabilityKind::Quasistable(v0) = kind {
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        if v0 >= g.n_vertices() {
            return Err(Error::IndexOutOfRange {
                what: "base vertex",
                index: v0,
                len: g.n_vertices(),
            });
        }
    }
    let engine = BetaEngine::new(g, p);
    let n = g.n_vertices();
    let mut out = Vec::new();
    for es in g.all_edges().subsets() {
        if matches!(kind, StabilityKind::Stable) && !es.is_empty() {
            continue;
        }
        let target = d + es.len() as i64;
        let bounds: Vec<(i64, i64)> = (0..n).map(|u| engine.value_bounds(g, es, u)).collect();
        if bounds.iter().any(|&(lo, hi)| lo > hi) {
            continue;
        }
        let mut values = vec![0i64; n];
        enumerate_values(&bounds, 0, target, &mut values, &mut |values: &[i64]| {
            let pd = PseudoDivisor { edges: es, values: values.to_vec() };
            let ok = match kind {
                StabilityKind::Semistable => scan_predicate(g, &engine, &pd, |_| false).0,
                StabilityKind::Stable => {
                    scan_predicate(g, &engine, &pd, |v| g.cut_and_delta(v).1 > 0).0
                }
                StabilityKind::Quasistable(v0) => {
                    scan_predicate(g, &engine, &pd, |v| v.contains(v0)).0
                }
                StabilityKind::Polystable => {
                    scan_predicate(g, &engine, &pd, |v| !g.cut_and_delta(v).0.is_subset_of(pd.edges)).0
                }
            };
            if ok {
                out.push(pd);
            }
        });
    }
    out.sort();
    Ok(out)
}

fn enumerate_values(
    bounds: &[(i64, i64)],
    k: usize,
    remaining: i64,
    values: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if k == bounds.len() {
        if remaining == 0 {
            f(values);
        }
        return;
    }
    let tail_lo: i64 = bounds[k + 1..].iter().map(|&(lo, _)| lo).sum();
    let tail_hi: i64 = bounds[k + 1..].iter().map(|&(_, hi)| hi).sum();
    let (lo, hi) = bounds[k];
    let lo = lo.max(remaining - tail_hi);
    let hi = hi.min(remaining - tail_lo);
    for v in lo..=hi {
        values[k] = v;
        enumerate_values(bounds, k + 1, remaining - v, values, f);
    }
}

/// Pretty-print a pseudo-divisor for reports: `E={0,2} D=(1,-1)`.
pub fn format_pd(pd: &PseudoDivisor) -> alloc::string::String {
    let es: Vec<alloc::string::String> =
        pd.edges.iter().map(|i| format!("{i}")).collect();
    let ds: Vec<alloc::string::String> = pd.values.iter().map(|v| format!("{v}")).collect();
    format!("E={{{}}} D=({})", es.join(","), ds.join(","))
}
