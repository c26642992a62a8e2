//! Tropical curves, unitary divisors, and divisor equivalence.
//!
//! A tropical curve is a weighted graph with positive rational edge lengths.
//! The divisors handled here are unitary: integer values at vertices plus at
//! most one interior point of value -1 per edge. Equivalence is decided
//! exactly through the principal-displacement subspace, with a
//! polystabilization fallback when the combinatorial types differ.

use crate::geometry::{principal_subspace, PositionBox};
use crate::graph::{EdgeSet, VertexSet, WeightedGraph};
use crate::linalg::span_membership;
use crate::rat::{rat, zero};
use crate::stability::{self, is_polystable, is_semistable, BetaEngine, Polarization, PseudoDivisor};
use crate::{Error, Rat, Result};
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

/// A metric graph: weighted model plus a positive rational length per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    pub model: WeightedGraph,
    pub lengths: Vec<Rat>,
}

impl TropicalCurve {
    pub fn new(model: WeightedGraph, lengths: Vec<Rat>) -> Result<TropicalCurve> {
        if lengths.len() != model.n_edges() {
            return Err(Error::ShapeMismatch {
                what: "length vector",
                left: lengths.len(),
                right: model.n_edges(),
            });
        }
        for (i, l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(Error::NonPositiveLength { edge: i });
            }
        }
        Ok(TropicalCurve { model, lengths })
    }

    pub fn genus(&self) -> i64 {
        self.model.genus()
    }

    pub fn length(&self, edge: usize) -> &Rat {
        &self.lengths[edge]
    }
}

/// A unitary divisor: integer vertex values (the combinatorial type) plus a
/// strictly interior -1 point on each marked edge, at rational distance
/// `position` from the edge's source endpoint. Positions are stored in
/// ascending marked-edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryDivisor {
    pub ty: PseudoDivisor,
    positions: Vec<Rat>,
}

impl UnitaryDivisor {
    pub fn new(x: &TropicalCurve, ty: PseudoDivisor, positions: Vec<Rat>) -> Result<UnitaryDivisor> {
        ty.check_graph(&x.model)?;
        let edges = ty.edges.indices();
        if positions.len() != edges.len() {
            return Err(Error::ShapeMismatch {
                what: "position vector",
                left: positions.len(),
                right: edges.len(),
            });
        }
        for (k, &e) in edges.iter().enumerate() {
            if !positions[k].is_positive() || positions[k] >= x.lengths[e] {
                return Err(Error::PositionOutOfRange { edge: e });
            }
        }
        Ok(UnitaryDivisor { ty, positions })
    }

    /// A divisor supported on vertices only.
    pub fn vertex_supported(x: &TropicalCurve, values: Vec<i64>) -> Result<UnitaryDivisor> {
        UnitaryDivisor::new(x, PseudoDivisor::plain(values), Vec::new())
    }

    /// The combinatorial type (marked edges plus vertex values).
    pub fn combinatorial_type(&self) -> &PseudoDivisor {
        &self.ty
    }

    pub fn degree(&self) -> i64 {
        self.ty.degree()
    }

    /// Position of the interior point on `edge`, when marked.
    pub fn position(&self, edge: usize) -> Option<&Rat> {
        let edges = self.ty.edges.indices();
        edges.iter().position(|&e| e == edge).map(|k| &self.positions[k])
    }

    /// Positions in ascending marked-edge order (box coordinates).
    pub fn position_vector(&self) -> &[Rat] {
        &self.positions
    }
}

/// A signed displacement along each edge of a marked set: the coordinate
/// difference of two unitary divisors with the same combinatorial type.
/// Zero outside the marked edges by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Displacement {
    pub edges: EdgeSet,
    /// One entry per marked edge, ascending edge order.
    pub shift: Vec<Rat>,
}

impl Displacement {
    pub fn new(edges: EdgeSet, shift: Vec<Rat>) -> Result<Displacement> {
        if shift.len() != edges.len() {
            return Err(Error::ShapeMismatch {
                what: "displacement vector",
                left: shift.len(),
                right: edges.len(),
            });
        }
        Ok(Displacement { edges, shift })
    }

    pub fn zero(edges: EdgeSet) -> Displacement {
        Displacement { edges, shift: alloc::vec![zero(); edges.len()] }
    }

    /// Coordinate difference `d1 - d2` of two divisors sharing a type.
    pub fn between(d1: &UnitaryDivisor, d2: &UnitaryDivisor) -> Result<Displacement> {
        if d1.ty != d2.ty {
            return Err(Error::Precondition("displacement needs equal combinatorial types"));
        }
        let shift = d1
            .positions
            .iter()
            .zip(&d2.positions)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Displacement { edges: d1.ty.edges, shift })
    }

    pub fn is_zero(&self) -> bool {
        self.shift.iter().all(|x| x.is_zero())
    }
}

/// Whether a displacement is realized by a rational function on the curve:
/// exactly membership in the principal subspace of its marked set.
pub fn is_principal(g: &WeightedGraph, x: &Displacement) -> bool {
    let basis = principal_subspace(g, x.edges);
    span_membership(&basis, &x.shift).is_some()
}

/// Decide linear equivalence of two unitary divisors on one curve.
///
/// Same combinatorial type: the displacement must be principal. Different
/// types, both polystable: never equivalent. Otherwise both sides are
/// polystabilized first and the polystable representatives compared.
pub fn equivalent(
    x: &TropicalCurve,
    p: &Polarization,
    d1: &UnitaryDivisor,
    d2: &UnitaryDivisor,
) -> Result<bool> {
    if d1.degree() != d2.degree() {
        return Err(Error::DegreeMismatch {
            divisor: d1.degree(),
            polarization: {
                use alloc::string::ToString;
                d2.degree().to_string()
            },
        });
    }
    if d1.ty == d2.ty {
        return Ok(is_principal(&x.model, &Displacement::between(d1, d2)?));
    }
    let p1 = is_polystable(&x.model, p, &d1.ty)?.0;
    let p2 = is_polystable(&x.model, p, &d2.ty)?.0;
    if p1 && p2 {
        return Ok(false);
    }
    let r1 = if p1 { d1.clone() } else { polystabilize_on_curve(x, p, d1)? };
    let r2 = if p2 { d2.clone() } else { polystabilize_on_curve(x, p, d2)? };
    if r1.ty != r2.ty {
        return Ok(false);
    }
    Ok(is_principal(&x.model, &Displacement::between(&r1, &r2)?))
}

/// One violating subset for the polystabilization walk: zero slack, boundary
/// not fully marked, boundary inclusion-minimal among such, ties broken by
/// smallest vertex bitmask.
fn pick_violating(
    g: &WeightedGraph,
    engine: &BetaEngine,
    pd: &PseudoDivisor,
) -> Option<VertexSet> {
    let full = VertexSet::full(g.n_vertices()).0;
    let mut best: Option<(EdgeSet, VertexSet)> = None;
    for bits in 1..full {
        let v = VertexSet(bits);
        if engine.beta_sign(g, pd.edges, &pd.values, v) != 0 {
            continue;
        }
        let (cut, _) = g.cut_and_delta(v);
        if cut.is_subset_of(pd.edges) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bc, _)) => cut.is_subset_of(*bc) && cut != *bc,
        };
        if better {
            best = Some((cut, v));
        }
    }
    best.map(|(_, v)| v)
}

/// Replace a semistable unitary divisor by an equivalent one whose
/// combinatorial type is polystable.
///
/// Each round picks a violating subset, computes the minimal distance `r`
/// from the current cut points to the far endpoints, moves every existing
/// cut point by `r/2` toward the far side, and spawns a point at distance
/// `r/2` into each newly marked edge; vertex values absorb the changes so
/// that the type undergoes exactly one saturation step.
pub fn polystabilize_on_curve(
    x: &TropicalCurve,
    p: &Polarization,
    d: &UnitaryDivisor,
) -> Result<UnitaryDivisor> {
    let g = &x.model;
    let (semi, witness) = is_semistable(g, p, &d.ty)?;
    if !semi {
        return Err(Error::NotSemistable { witness_bits: witness.map(|w| w.0).unwrap_or(0) });
    }
    let engine = BetaEngine::new(g, p);
    let mut current = d.clone();
    let mut rounds = 0usize;
    while let Some(v) = pick_violating(g, &engine, &current.ty) {
        let (cut, _) = g.cut_and_delta(v);
        // Distance from each cut point (or near endpoint) to the far side.
        let mut r: Option<Rat> = None;
        for e in cut.iter() {
            let edge = g.edge(e);
            let far_is_t = v.contains(edge.s);
            let dist = match current.position(e) {
                Some(a) => {
                    if far_is_t {
                        x.lengths[e].clone() - a
                    } else {
                        a.clone()
                    }
                }
                None => x.lengths[e].clone(),
            };
            debug_assert!(dist.is_positive());
            r = Some(match r {
                None => dist,
                Some(m) => {
                    if dist < m {
                        dist
                    } else {
                        m
                    }
                }
            });
        }
        let step = r.expect("violating set has a nonempty cut") / rat(2);
        // New type: one saturation step at v.
        let added = cut.difference(current.ty.edges);
        let mut values = current.ty.values.clone();
        for e in added.iter() {
            let edge = g.edge(e);
            let inside = if v.contains(edge.s) { edge.s } else { edge.t };
            values[inside] += 1;
        }
        let ty = PseudoDivisor::new(current.ty.edges.union(added), values);
        // New positions: every cut point sits at distance `step` beyond the
        // old point (or the near endpoint) toward the far endpoint.
        let mut positions = Vec::new();
        for e in ty.edges.indices() {
            let edge = g.edge(e);
            if !cut.contains(e) {
                positions.push(current.position(e).unwrap().clone());
                continue;
            }
            let far_is_t = v.contains(edge.s);
            let a = match current.position(e) {
                Some(a) => {
                    if far_is_t {
                        a + &step
                    } else {
                        a - &step
                    }
                }
                None => {
                    if far_is_t {
                        step.clone()
                    } else {
                        &x.lengths[e] - &step
                    }
                }
            };
            positions.push(a);
        }
        current = UnitaryDivisor::new(x, ty, positions)?;
        rounds += 1;
        assert!(rounds <= g.n_edges(), "polystabilization must terminate");
    }
    debug_assert!(is_polystable(g, p, &current.ty)?.0);
    debug_assert_eq!(current.degree(), d.degree());
    Ok(current)
}

/// Translate a unitary divisor by a principal displacement. Errors when the
/// displacement is not principal or a point would leave its open edge.
pub fn move_by_principal(
    x: &TropicalCurve,
    d: &UnitaryDivisor,
    disp: &Displacement,
) -> Result<UnitaryDivisor> {
    if disp.edges != d.ty.edges {
        return Err(Error::ShapeMismatch {
            what: "displacement support",
            left: disp.edges.len(),
            right: d.ty.edges.len(),
        });
    }
    if !is_principal(&x.model, disp) {
        return Err(Error::Precondition("displacement is not principal"));
    }
    let edges = d.ty.edges.indices();
    let mut positions = Vec::with_capacity(edges.len());
    for (k, &e) in edges.iter().enumerate() {
        let a = &d.positions[k] + &disp.shift[k];
        if !a.is_positive() || a >= x.lengths[e] {
            return Err(Error::CellExit { edge: e });
        }
        positions.push(a);
    }
    let out = UnitaryDivisor::new(x, d.ty.clone(), positions)?;
    Ok(out)
}

/// The position box a divisor type carves out of its curve.
pub fn type_box(x: &TropicalCurve, ty: &PseudoDivisor) -> Result<PositionBox> {
    PositionBox::new(&x.model, ty.edges, &x.lengths)
}

/// Stability bookkeeping for a unitary divisor via its type.
pub fn divisor_is_semistable(
    x: &TropicalCurve,
    p: &Polarization,
    d: &UnitaryDivisor,
) -> Result<bool> {
    Ok(is_semistable(&x.model, p, &d.ty)?.0)
}

/// Degree-checked helper: slack of the divisor's type on a vertex subset.
pub fn type_slack(
    x: &TropicalCurve,
    p: &Polarization,
    d: &UnitaryDivisor,
    v: VertexSet,
) -> Result<Rat> {
    stability::beta(&x.model, p, &d.ty, v)
}
