//! Cell complexes over stability posets: the polystable and quasistable
//! decompositions of a curve's degree-d divisor classes, the refinement map
//! between them, the genus-level cone complex, and point location.
//!
//! A complex pairs each poset element with its geometric cell; cover
//! relations are verified as genuine face inclusions by embedding the lower
//! cell into the upper cell's coordinates along a specialization witness.

use crate::curve::{polystabilize_on_curve, TropicalCurve, UnitaryDivisor};
use crate::geometry::{
    divisor_cell, is_face_of_cone, is_face_of_polytope, moduli_cone, PositionBox, QuotientCell,
};
use crate::graph::{GraphIso, RefinedEdge, WeightedGraph};
use crate::polystab::{
    self, apply_iso, build_poset, build_universal_poset, saturation_assignment, StabilityPoset,
    UniversalPoset,
};
use crate::rat::zero;
use crate::stability::{
    is_semistable, pushforward_pd, specialization_witnesses, Polarization, PseudoDivisor,
    StabilityKind,
};
use crate::{Error, Rat, Result};
use alloc::vec;
use alloc::vec::Vec;

/// A stability poset with one geometric cell per element, over a fixed curve.
#[derive(Debug, Clone)]
pub struct CellComplex {
    pub curve: TropicalCurve,
    pub index: StabilityPoset,
    pub cells: Vec<QuotientCell>,
}

/// Result of verifying one cover relation geometrically.
#[derive(Debug, Clone)]
pub struct FaceCheck {
    pub upper: usize,
    pub lower: usize,
    pub passed: bool,
}

/// Face verification over all covers of a complex.
#[derive(Debug, Clone)]
pub struct FaceReport {
    pub checks: Vec<FaceCheck>,
    pub all_pass: bool,
}

impl CellComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.index.euler_characteristic()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.index.f_vector()
    }
}

/// The polystable decomposition: one quotient cell per polystable
/// pseudo-divisor of degree `d`.
pub fn build_jacobian_polystable(
    x: &TropicalCurve,
    p: &Polarization,
    d: i64,
) -> Result<CellComplex> {
    if !x.model.is_connected() {
        return Err(Error::NotConnected);
    }
    let index = build_poset(&x.model, p, StabilityKind::Polystable, d)?;
    let cells = index
        .elements
        .iter()
        .map(|pd| divisor_cell(&x.model, pd, &x.lengths))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellComplex { curve: x.clone(), index, cells })
}

/// The quasistable decomposition with base vertex `v0`: quasistable types
/// never disconnect when deleted, so every cell is its own position box
/// (the principal quotient is trivial).
pub fn build_jacobian_quasistable(
    x: &TropicalCurve,
    p: &Polarization,
    v0: usize,
    d: i64,
) -> Result<CellComplex> {
    if !x.model.is_connected() {
        return Err(Error::NotConnected);
    }
    let index = build_poset(&x.model, p, StabilityKind::Quasistable(v0), d)?;
    let cells = index
        .elements
        .iter()
        .map(|pd| {
            let cell = divisor_cell(&x.model, pd, &x.lengths)?;
            debug_assert!(cell.subspace.is_empty(), "quasistable types are simple");
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellComplex { curve: x.clone(), index, cells })
}

/// The candidate corner placements of the lower type's box inside the upper
/// type's box coordinates: one list of corners per specialization witness
/// and per endpoint choice on newly marked loops (a loop's point can retire
/// to either end of its coordinate).
pub fn corner_embeddings(
    g: &WeightedGraph,
    lengths: &[Rat],
    upper: &PseudoDivisor,
    lower: &PseudoDivisor,
) -> Result<Vec<Vec<Vec<Rat>>>> {
    let witnesses = specialization_witnesses(g, upper, lower)?;
    let lower_box = PositionBox::new(g, lower.edges, lengths)?;
    let upper_edges = upper.edges.indices();
    let corners = lower_box.corners();
    let mut variants = Vec::new();
    for w in &witnesses {
        let loops: Vec<usize> =
            w.iter().filter(|&&(e, _)| g.edge(e).is_loop()).map(|&(e, _)| e).collect();
        for lmask in 0u32..(1u32 << loops.len()) {
            let mut images = Vec::with_capacity(corners.len());
            for corner in &corners {
                let mut xe = Vec::with_capacity(upper_edges.len());
                for &e in &upper_edges {
                    if let Some(k) = lower_box.edges.iter().position(|&le| le == e) {
                        xe.push(corner[k].clone());
                        continue;
                    }
                    let &(_, v) = w.iter().find(|&&(ae, _)| ae == e).expect("witness covers e");
                    let edge = g.edge(e);
                    let at_far = if edge.is_loop() {
                        let li = loops.iter().position(|&l| l == e).unwrap();
                        lmask & (1 << li) != 0
                    } else {
                        v == edge.t
                    };
                    xe.push(if at_far { lengths[e].clone() } else { zero() });
                }
                images.push(xe);
            }
            variants.push(images);
        }
    }
    Ok(variants)
}

/// Verify every Hasse cover of the complex as a geometric face: the lower
/// cell, embedded along some specialization witness, must pass the
/// supporting-functional face test inside the upper cell.
pub fn verify_faces(c: &CellComplex) -> Result<FaceReport> {
    let g = &c.curve.model;
    let mut checks = Vec::new();
    for &(upper, lower) in &c.index.poset.covers {
        let variants =
            corner_embeddings(g, &c.curve.lengths, &c.index.elements[upper], &c.index.elements[lower])?;
        let mut passed = false;
        for corners in &variants {
            let inner: Vec<Vec<Rat>> =
                corners.iter().map(|x| c.cells[upper].project(x)).collect();
            match is_face_of_polytope(&inner, &c.cells[upper]) {
                Ok(true) => {
                    passed = true;
                    break;
                }
                Ok(false) => {}
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e),
            }
        }
        checks.push(FaceCheck { upper, lower, passed });
    }
    let all_pass = checks.iter().all(|c| c.passed);
    Ok(FaceReport { checks, all_pass })
}

/// Embed a semistable (not necessarily polystable) type's box into the cell
/// of its polystabilization, along the saturation chain's endpoint
/// assignment, and report whether the embedding is a face of that cell.
/// Containment always holds; the face test fails exactly when the input was
/// not already polystable.
pub fn semistable_containment_is_face(
    x: &TropicalCurve,
    p: &Polarization,
    pd: &PseudoDivisor,
) -> Result<bool> {
    let g = &x.model;
    let (target, chain) = polystab::polystabilize(g, p, pd)?;
    let assignment = saturation_assignment(g, &chain);
    let cell = divisor_cell(g, &target, &x.lengths)?;
    let bx = PositionBox::new(g, pd.edges, &x.lengths)?;
    let upper_edges = target.edges.indices();
    let inner: Vec<Vec<Rat>> = bx
        .corners()
        .iter()
        .map(|corner| {
            let xe: Vec<Rat> = upper_edges
                .iter()
                .map(|&e| {
                    if let Some(k) = bx.edges.iter().position(|&le| le == e) {
                        corner[k].clone()
                    } else {
                        let &(_, v) =
                            assignment.iter().find(|&&(ae, _)| ae == e).expect("chain covers e");
                        if v == g.edge(e).t && !g.edge(e).is_loop() {
                            x.lengths[e].clone()
                        } else {
                            zero()
                        }
                    }
                })
                .collect();
            cell.project(&xe)
        })
        .collect();
    is_face_of_polytope(&inner, &cell)
}

/// The refinement data from the quasistable complex to the polystable one.
#[derive(Debug, Clone)]
pub struct RefinementMap {
    /// For each fine element, the coarse element its cell maps into.
    pub images: Vec<usize>,
    /// Vertex-level containment verified for every fine cell.
    pub verified: bool,
    /// `(coarse top element, number of fine top cells mapping into it)`.
    pub top_cover_counts: Vec<(usize, usize)>,
}

/// Map every quasistable cell into the polystable cell of its
/// polystabilization and verify containment on box corners; count how many
/// top-dimensional fine cells land in each top-dimensional coarse cell.
pub fn refinement_map(fine: &CellComplex, coarse: &CellComplex) -> Result<RefinementMap> {
    if fine.curve != coarse.curve {
        return Err(Error::Precondition("refinement requires complexes over one curve"));
    }
    if fine.index.polarization != coarse.index.polarization
        || fine.index.degree != coarse.index.degree
    {
        return Err(Error::Precondition("refinement requires equal polarization and degree"));
    }
    let g = &fine.curve.model;
    let p = &fine.index.polarization;
    let mut images = Vec::with_capacity(fine.index.elements.len());
    let mut verified = true;
    for pd in &fine.index.elements {
        let (target, chain) = polystab::polystabilize(g, p, pd)?;
        let assignment = saturation_assignment(g, &chain);
        let idx = coarse
            .index
            .index_of(&target)
            .ok_or(Error::Precondition("polystabilization missing from the coarse complex"))?;
        let cell = &coarse.cells[idx];
        let bx = PositionBox::new(g, pd.edges, &fine.curve.lengths)?;
        let upper_edges = target.edges.indices();
        for corner in bx.corners() {
            let xe: Vec<Rat> = upper_edges
                .iter()
                .map(|&e| {
                    if let Some(k) = bx.edges.iter().position(|&le| le == e) {
                        corner[k].clone()
                    } else {
                        let &(_, v) =
                            assignment.iter().find(|&&(ae, _)| ae == e).expect("chain covers e");
                        debug_assert!(!g.edge(e).is_loop(), "cuts never contain loops");
                        if v == g.edge(e).t {
                            fine.curve.lengths[e].clone()
                        } else {
                            zero()
                        }
                    }
                })
                .collect();
            if !cell.contains(&cell.project(&xe))? {
                verified = false;
            }
        }
        images.push(idx);
    }
    // Top-cell covering counts: fine cells of maximal rank per coarse top cell.
    let coarse_top = coarse.index.ranks.iter().max().copied().unwrap_or(0);
    let fine_top = fine.index.ranks.iter().max().copied().unwrap_or(0);
    let mut top_cover_counts = Vec::new();
    for (ci, &cr) in coarse.index.ranks.iter().enumerate() {
        if cr == coarse_top {
            let count = images
                .iter()
                .enumerate()
                .filter(|&(fi, &img)| img == ci && fine.index.ranks[fi] == fine_top)
                .count();
            top_cover_counts.push((ci, count));
        }
    }
    Ok(RefinementMap { images, verified, top_cover_counts })
}

/// The genus-level complex: one moduli cone per isomorphism class of
/// polystable pseudo-divisor over all stable weighted graphs of the genus.
#[derive(Debug, Clone)]
pub struct UniversalComplex {
    pub poset: UniversalPoset,
    pub cones: Vec<QuotientCell>,
    /// Cells per dimension, one per isomorphism class.
    pub f_classes: Vec<usize>,
    /// Cells per dimension before automorphism identification (raw
    /// polystable elements summed over graph classes).
    pub f_elements: Vec<usize>,
}

/// Build the genus-level cone complex for the canonical polarization.
pub fn build_universal(genus: i64, d: i64) -> Result<UniversalComplex> {
    let poset = build_universal_poset(genus, d)?;
    let cones = poset
        .classes
        .iter()
        .map(|c| moduli_cone(&poset.graphs[c.graph], &c.pd))
        .collect::<Result<Vec<_>>>()?;
    for (cone, dim) in cones.iter().zip(&poset.dims) {
        debug_assert_eq!(cone.dim, *dim);
    }
    let top = poset.dims.iter().max().copied().unwrap_or(0);
    let mut f_classes = vec![0usize; top + 1];
    for &d in &poset.dims {
        f_classes[d] += 1;
    }
    let mut f_elements = vec![0usize; top + 1];
    for (gi, g) in poset.graphs.iter().enumerate() {
        let elements = crate::stability::enumerate_pseudo_divisors(
            g,
            &poset.polarizations[gi],
            StabilityKind::Polystable,
            d,
        )?;
        for pd in &elements {
            let dim = g.n_edges() + crate::stability::rank(g, pd)?;
            f_elements[dim] += 1;
        }
    }
    Ok(UniversalComplex { poset, cones, f_classes, f_elements })
}

/// Verify every cover of the universal poset as a geometric cone face: the
/// lower class's cone embeds into the upper class's refined coordinates
/// along a contraction + isomorphism + specialization witness, and must pass
/// the supporting-functional test for at least one route.
pub fn verify_universal_faces(c: &UniversalComplex) -> Result<FaceReport> {
    let up = &c.poset;
    let mut checks = Vec::new();
    for &(upper, lower) in &up.poset.covers {
        let a = &up.classes[upper];
        let b = &up.classes[lower];
        let ga = &up.graphs[a.graph];
        let gb = &up.graphs[b.graph];
        let mut passed = false;
        'routes: for f in ga.all_edges().subsets() {
            let spec = ga.contract(f);
            if spec.target.n_vertices() != gb.n_vertices()
                || spec.target.n_edges() != gb.n_edges()
            {
                continue;
            }
            for iso in spec.target.isomorphisms(gb)? {
                let pushed = pushforward_pd(&spec, &a.pd)?;
                let mapped = apply_iso(&pushed, &iso);
                let witnesses = specialization_witnesses(gb, &mapped, &b.pd)?;
                if witnesses.is_empty() {
                    continue;
                }
                for w in &witnesses {
                    for rays in
                        cone_ray_embeddings(ga, &a.pd, gb, &b.pd, &spec.edge_map, &iso, w)?
                    {
                        let inner: Vec<Vec<Rat>> =
                            rays.iter().map(|r| c.cones[upper].project(r)).collect();
                        match is_face_of_cone(&inner, &c.cones[upper]) {
                            Ok(true) => {
                                passed = true;
                                break 'routes;
                            }
                            Ok(false) => {}
                            Err(Error::Precondition(_)) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
        checks.push(FaceCheck { upper, lower, passed });
    }
    let all_pass = checks.iter().all(|c| c.passed);
    Ok(FaceReport { checks, all_pass })
}

/// Pre-quotient images (in the upper refined-edge space) of the lower
/// refined-edge standard basis, one list per endpoint variant on loops that
/// gain a marked point upstairs. Every lower coordinate maps to a single
/// upper coordinate: kept edges map to kept edges or to the far half of a
/// newly marked edge; split halves map to split halves, flipped when the
/// isomorphism reverses the edge.
fn cone_ray_embeddings(
    ga: &WeightedGraph,
    a_pd: &PseudoDivisor,
    gb: &WeightedGraph,
    b_pd: &PseudoDivisor,
    spec_edge_map: &[usize],
    iso: &GraphIso,
    witness: &[(usize, usize)],
) -> Result<Vec<Vec<Vec<Rat>>>> {
    let ref_a = ga.refine(a_pd.edges);
    let ref_b = gb.refine(b_pd.edges);
    let dim_a = ref_a.graph.n_edges();
    // Lower edge -> upper edge through the isomorphism and the contraction.
    let mut inv_iso = vec![usize::MAX; gb.n_edges()];
    for (jt, &jb) in iso.edge_map.iter().enumerate() {
        inv_iso[jb] = jt;
    }
    // Ambiguous loops: unmarked loop downstairs, marked loop upstairs.
    let mut ambiguous_loops = Vec::new();
    for eb in 0..gb.n_edges() {
        let ea = spec_edge_map[inv_iso[eb]];
        if gb.edge(eb).is_loop()
            && !b_pd.edges.contains(eb)
            && a_pd.edges.contains(ea)
        {
            ambiguous_loops.push(eb);
        }
    }
    let mut variants = Vec::new();
    for lmask in 0u32..(1u32 << ambiguous_loops.len()) {
        let mut rays = Vec::new();
        for eb in 0..gb.n_edges() {
            let jt = inv_iso[eb];
            let ea = spec_edge_map[jt];
            let flip = iso.flipped[jt];
            match (&ref_b.edge_images[eb], &ref_a.edge_images[ea]) {
                (RefinedEdge::Kept(_), RefinedEdge::Kept(ja)) => {
                    rays.push(unit(dim_a, *ja));
                }
                (RefinedEdge::Kept(_), RefinedEdge::Split { s_half, t_half, .. }) => {
                    // The lower edge's length lands on the far half; the
                    // near (witness-endpoint) half collapses to zero.
                    let edge_b = gb.edge(eb);
                    let coord = if edge_b.is_loop() {
                        let li = ambiguous_loops.iter().position(|&l| l == eb).unwrap();
                        if lmask & (1 << li) != 0 {
                            *t_half
                        } else {
                            *s_half
                        }
                    } else {
                        let &(_, v) = witness
                            .iter()
                            .find(|&&(we, _)| we == eb)
                            .expect("witness covers unmarked-to-marked edges");
                        // v is the near endpoint downstairs; match it to the
                        // upstairs orientation.
                        let near_is_s_downstairs = v == edge_b.s;
                        let near_is_s_upstairs = near_is_s_downstairs != flip;
                        if near_is_s_upstairs {
                            *t_half
                        } else {
                            *s_half
                        }
                    };
                    rays.push(unit(dim_a, coord));
                }
                (
                    RefinedEdge::Split { s_half: sb, t_half: tb, .. },
                    RefinedEdge::Split { s_half: sa, t_half: ta, .. },
                ) => {
                    let _ = sb;
                    let _ = tb;
                    if flip {
                        rays.push(unit(dim_a, *ta));
                        rays.push(unit(dim_a, *sa));
                    } else {
                        rays.push(unit(dim_a, *sa));
                        rays.push(unit(dim_a, *ta));
                    }
                }
                (RefinedEdge::Split { .. }, RefinedEdge::Kept(_)) => {
                    return Err(Error::Precondition(
                        "lower marked edge must stay marked upstairs",
                    ));
                }
            }
        }
        variants.push(rays);
    }
    Ok(variants)
}

fn unit(dim: usize, coord: usize) -> Vec<Rat> {
    let mut v = vec![zero(); dim];
    v[coord] = crate::rat::rat(1);
    v
}

/// Locate a semistable unitary divisor in the polystable complex of its
/// curve: polystabilize, find the cell of the resulting type, and return the
/// cell index with the quotient coordinates of the representative's
/// positions. Equivalent divisors locate identically.
pub fn locate(
    x: &TropicalCurve,
    p: &Polarization,
    d: &UnitaryDivisor,
    complex: &CellComplex,
) -> Result<(usize, Vec<Rat>)> {
    if complex.curve != *x {
        return Err(Error::Precondition("complex was built over a different curve"));
    }
    if complex.index.kind != StabilityKind::Polystable {
        return Err(Error::Precondition("locate needs the polystable complex"));
    }
    let (semi, witness) = is_semistable(&x.model, p, d.combinatorial_type())?;
    if !semi {
        return Err(Error::NotSemistable { witness_bits: witness.map(|w| w.0).unwrap_or(0) });
    }
    let rep = polystabilize_on_curve(x, p, d)?;
    let idx = complex
        .index
        .index_of(&rep.ty)
        .ok_or(Error::Precondition("divisor's polystable type missing from the complex"))?;
    let coords = complex.cells[idx].project(rep.position_vector());
    Ok((idx, coords))
}
