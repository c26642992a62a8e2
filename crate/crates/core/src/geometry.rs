//! Cells and cones of the Jacobian decompositions.
//!
//! A pseudo-divisor with marked edges `E` indexes a box of interior
//! positions; translating by principal displacements means quotienting by a
//! relation subspace. This module builds those subspaces (two independent
//! ways, cross-asserted), the quotient cells `P` and cones `sigma`, and the
//! exact face tests between them.

use crate::graph::{EdgeSet, RefinedEdge, Refinement, VertexSet, WeightedGraph};
use crate::linalg::{
    self, dot, in_cone, in_conv, lp_feasible, Constraint, QuotientMap, RatMatrix, Rel,
};
use crate::rat::{rat, zero};
use crate::stability::{self, PseudoDivisor};
use crate::{Error, Rat, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Ceiling on marked edges when enumerating box corners (2^|E| of them).
pub const MAX_CELL_EDGES: usize = 16;

/// Per-component displacement vector in the marked-edge coordinates:
/// `+1` on edges leaving `c`, `-1` on edges entering, `0` otherwise.
fn cut_vector(g: &WeightedGraph, es: EdgeSet, c: VertexSet) -> Vec<Rat> {
    es.iter()
        .map(|i| {
            let e = g.edge(i);
            rat((c.contains(e.s) as i64) - (c.contains(e.t) as i64))
        })
        .collect()
}

/// Vertex sets of the connected components of the graph with the marked
/// edges removed.
pub fn deletion_components(g: &WeightedGraph, es: EdgeSet) -> Vec<VertexSet> {
    let ids = g.components_in(g.all_edges().difference(es));
    let mut reps: Vec<usize> = ids.clone();
    reps.sort_unstable();
    reps.dedup();
    reps.iter()
        .map(|&r| {
            let mut vs = VertexSet::EMPTY;
            for (v, &id) in ids.iter().enumerate() {
                if id == r {
                    vs.insert(v);
                }
            }
            vs
        })
        .collect()
}

/// The subspace of principal displacements inside the marked-edge space,
/// computed two independent ways and cross-asserted:
/// (a) the span of the per-component cut vectors,
/// (b) the kernel of the cycle equations restricted to the marked edges.
/// Returns a reduced basis; its dimension is the component surplus of the
/// deletion.
pub fn principal_subspace(g: &WeightedGraph, es: EdgeSet) -> Vec<Vec<Rat>> {
    let comps = deletion_components(g, es);
    let gens: Vec<Vec<Rat>> = comps.iter().map(|&c| cut_vector(g, es, c)).collect();
    let positions = es.indices();
    // Independent route: a displacement is principal exactly when it pairs
    // to zero with every cycle, i.e. lies in the kernel of the restricted
    // cycle matrix.
    let cycles = g.cycle_space_basis();
    let rows: Vec<Vec<Rat>> = cycles
        .iter()
        .map(|gamma| positions.iter().map(|&i| rat(gamma[i])).collect())
        .collect();
    let kernel_basis = if positions.is_empty() {
        Vec::new()
    } else if rows.is_empty() {
        RatMatrix::zeros(0, positions.len()).kernel()
    } else {
        RatMatrix::from_rows(rows).kernel()
    };
    assert!(
        linalg::spans_equal(&gens, &kernel_basis),
        "component route and cycle route disagree on the principal subspace"
    );
    let basis = reduce_to_basis(&gens, positions.len());
    debug_assert_eq!(basis.len(), comps.len() - g.b0());
    basis
}

/// The refined relation subspace inside the refined-edge space: per
/// component `c` of the deletion, the vector carrying the reach of `c`
/// across each split edge on its near half and the opposite value on the
/// far half.
pub fn refined_subspace(g: &WeightedGraph, es: EdgeSet) -> Vec<Vec<Rat>> {
    let refinement = g.refine(es);
    let ambient = refinement.graph.n_edges();
    let comps = deletion_components(g, es);
    let gens: Vec<Vec<Rat>> = comps
        .iter()
        .map(|&c| refined_cut_vector(g, &refinement, c))
        .collect();
    // Additivity over unions of components (disjoint supports), spot-checked
    // exhaustively at desk scale.
    if comps.len() <= 8 {
        for mask in 0u32..(1u32 << comps.len()) {
            let mut v: VertexSet = VertexSet::EMPTY;
            let mut sum = vec![zero(); ambient];
            for (k, &c) in comps.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    v = VertexSet(v.0 | c.0);
                    sum = linalg::add_vec(&sum, &gens[k]);
                }
            }
            debug_assert_eq!(refined_cut_vector(g, &refinement, v), sum);
        }
    }
    reduce_to_basis(&gens, ambient)
}

fn refined_cut_vector(g: &WeightedGraph, refinement: &Refinement, c: VertexSet) -> Vec<Rat> {
    let mut w = vec![zero(); refinement.graph.n_edges()];
    for (i, img) in refinement.edge_images.iter().enumerate() {
        if let RefinedEdge::Split { s_half, t_half, .. } = img {
            let e = g.edge(i);
            let val = (c.contains(e.s) as i64) - (c.contains(e.t) as i64);
            w[*s_half] = rat(val);
            w[*t_half] = rat(-val);
        }
    }
    w
}

/// Reduced basis of the span of `gens` (nonzero rows of the echelon form).
fn reduce_to_basis(gens: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mut m = RatMatrix::from_rows(gens.to_vec());
    let pivots = m.rref();
    let _ = cols;
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

/// The two linear maps out of the refined-edge space: `f` sums the halves of
/// each original edge (total length), `g` reads the near-half coordinate of
/// each marked edge (position). Their stack is asserted to be a linear
/// isomorphism, and the refined subspace maps onto `{0} x principal`.
pub fn edge_maps(g: &WeightedGraph, es: EdgeSet) -> (RatMatrix, RatMatrix) {
    let refinement = g.refine(es);
    let ambient = refinement.graph.n_edges();
    let mut f = RatMatrix::zeros(g.n_edges(), ambient);
    for (i, img) in refinement.edge_images.iter().enumerate() {
        match img {
            RefinedEdge::Kept(j) => *f.at_mut(i, *j) = rat(1),
            RefinedEdge::Split { s_half, t_half, .. } => {
                *f.at_mut(i, *s_half) = rat(1);
                *f.at_mut(i, *t_half) = rat(1);
            }
        }
    }
    let positions = es.indices();
    let mut gm = RatMatrix::zeros(positions.len(), ambient);
    for (row, &i) in positions.iter().enumerate() {
        match refinement.edge_images[i] {
            RefinedEdge::Split { s_half, .. } => *gm.at_mut(row, s_half) = rat(1),
            RefinedEdge::Kept(_) => unreachable!("marked edges are split"),
        }
    }
    // The joint map is a bijection of coordinates, hence full rank.
    let mut joint = RatMatrix::zeros(g.n_edges() + positions.len(), ambient);
    for r in 0..g.n_edges() {
        for c in 0..ambient {
            *joint.at_mut(r, c) = f.at(r, c).clone();
        }
    }
    for r in 0..positions.len() {
        for c in 0..ambient {
            *joint.at_mut(g.n_edges() + r, c) = gm.at(r, c).clone();
        }
    }
    debug_assert_eq!(joint.rank(), ambient);
    debug_assert_eq!(ambient, g.n_edges() + positions.len());
    // Image check: the refined subspace lands on {0} x principal subspace.
    let refined = refined_subspace(g, es);
    let le = principal_subspace(g, es);
    let f_images: Vec<Vec<Rat>> = refined.iter().map(|w| f.mat_vec(w)).collect();
    debug_assert!(f_images.iter().all(|v| v.iter().all(|x| x.is_zero())));
    let g_images: Vec<Vec<Rat>> = refined.iter().map(|w| gm.mat_vec(w)).collect();
    debug_assert!(linalg::spans_equal(&g_images, &le));
    (f, gm)
}

/// Axis-aligned box of interior positions on the marked edges, coordinates
/// in ascending edge order.
#[derive(Debug, Clone)]
pub struct PositionBox {
    /// Graph edge index per coordinate, ascending.
    pub edges: Vec<usize>,
    /// Upper bound (edge length) per coordinate.
    pub lengths: Vec<Rat>,
}

impl PositionBox {
    pub fn new(g: &WeightedGraph, es: EdgeSet, lengths: &[Rat]) -> Result<PositionBox> {
        if lengths.len() != g.n_edges() {
            return Err(Error::ShapeMismatch {
                what: "length vector",
                left: lengths.len(),
                right: g.n_edges(),
            });
        }
        for (i, l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(Error::NonPositiveLength { edge: i });
            }
        }
        let edges = es.indices();
        if edges.len() > MAX_CELL_EDGES {
            return Err(Error::SizeGuard {
                what: "marked edges per cell",
                actual: edges.len(),
                max: MAX_CELL_EDGES,
            });
        }
        let lengths = edges.iter().map(|&i| lengths[i].clone()).collect();
        Ok(PositionBox { edges, lengths })
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    /// The 2^dim corner points.
    pub fn corners(&self) -> Vec<Vec<Rat>> {
        let d = self.dim();
        (0u32..(1u32 << d))
            .map(|mask| {
                (0..d)
                    .map(|k| if mask & (1 << k) != 0 { self.lengths[k].clone() } else { zero() })
                    .collect()
            })
            .collect()
    }

    /// The center, an interior point.
    pub fn center(&self) -> Vec<Rat> {
        self.lengths.iter().map(|l| l / rat(2)).collect()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(&self.lengths).all(|(v, l)| !v.is_negative() && v <= l)
    }

    pub fn contains_interior(&self, x: &[Rat]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(&self.lengths).all(|(v, l)| v.is_positive() && v < l)
    }
}

/// A polytope or pointed cone presented in quotient coordinates: generators
/// upstairs, extreme points (or extreme primitive rays) downstairs.
#[derive(Debug, Clone)]
pub struct QuotientCell {
    /// Dimension of the space being quotiented.
    pub ambient_dim: usize,
    /// Basis of the subspace quotiented out.
    pub subspace: Vec<Vec<Rat>>,
    /// The projection to quotient coordinates.
    pub map: QuotientMap,
    /// Pre-quotient generators (box corners or orthant rays).
    pub generators: Vec<Vec<Rat>>,
    /// Extreme points (polytope) or extreme primitive rays (cone), sorted.
    pub points: Vec<Vec<Rat>>,
    /// Whether this is a cone (rays) rather than a polytope (vertices).
    pub cone: bool,
    /// Affine dimension (polytope) or linear dimension (cone).
    pub dim: usize,
}

impl QuotientCell {
    /// Quotient-coordinate image of a pre-quotient point.
    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        self.map.apply(x)
    }

    /// Closed membership in quotient coordinates.
    pub fn contains(&self, p: &[Rat]) -> Result<bool> {
        if self.cone {
            Ok(in_cone(&self.points, p)?.is_some())
        } else {
            Ok(in_conv(&self.points, p)?.is_some())
        }
    }
}

fn affine_dim(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| linalg::sub_vec(p, base)).collect();
    RatMatrix::from_rows(rows).rank()
}

fn linear_dim(points: &[Vec<Rat>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(points.to_vec()).rank()
}

/// Scale a rational vector to a primitive integer vector (positive factor);
/// canonical representative of a ray.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::from(0);
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|i| Rat::from_integer(i / &gcd)).collect()
}

/// The divisor cell: the position box over the marked edges, pushed to the
/// quotient by the principal subspace. Its dimension equals the
/// pseudo-divisor's rank.
pub fn divisor_cell(
    g: &WeightedGraph,
    pd: &PseudoDivisor,
    lengths: &[Rat],
) -> Result<QuotientCell> {
    let bx = PositionBox::new(g, pd.edges, lengths)?;
    let subspace = principal_subspace(g, pd.edges);
    let map = QuotientMap::new(bx.dim(), &subspace);
    let generators = bx.corners();
    let mut images: Vec<Vec<Rat>> = generators.iter().map(|c| map.apply(c)).collect();
    images.sort();
    images.dedup();
    let points = linalg::extreme_points(&images)?;
    let dim = affine_dim(&points);
    debug_assert_eq!(dim, stability::rank(g, pd)?);
    Ok(QuotientCell { ambient_dim: bx.dim(), subspace, map, generators, points, cone: false, dim })
}

/// The moduli cone: the nonnegative orthant of the refined-edge space,
/// pushed to the quotient by the refined subspace. Rays are the images of
/// the standard basis vectors, reduced to extreme primitive rays.
pub fn moduli_cone(g: &WeightedGraph, pd: &PseudoDivisor) -> Result<QuotientCell> {
    let refinement = g.refine(pd.edges);
    let ambient = refinement.graph.n_edges();
    let subspace = refined_subspace(g, pd.edges);
    let map = QuotientMap::new(ambient, &subspace);
    let mut generators = Vec::with_capacity(ambient);
    for i in 0..ambient {
        let mut v = vec![zero(); ambient];
        v[i] = rat(1);
        generators.push(v);
    }
    let mut rays: Vec<Vec<Rat>> = generators
        .iter()
        .map(|v| primitive(&map.apply(v)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    rays.sort();
    rays.dedup();
    let points = extreme_rays(&rays)?;
    let dim = linear_dim(&points);
    Ok(QuotientCell { ambient_dim: ambient, subspace, map, generators, points, cone: true, dim })
}

/// Drop rays that are nonnegative combinations of the others.
pub fn extreme_rays(rays: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let mut pending: Vec<Vec<Rat>> = rays.to_vec();
    let mut i = 0;
    while i < pending.len() {
        let others: Vec<Vec<Rat>> = pending
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if in_cone(&others, &pending[i])?.is_some() {
            pending.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(pending)
}

/// Whether the polytope spanned by `inner_points` (in the outer cell's
/// quotient coordinates) is a face of `outer`. Errors when the inner set is
/// not contained in the outer cell. Decided by an exact supporting-functional
/// program: an affine form vanishing on the inner points and at least one on
/// every other outer vertex.
pub fn is_face_of_polytope(inner_points: &[Vec<Rat>], outer: &QuotientCell) -> Result<bool> {
    assert!(!outer.cone, "outer must be a polytope");
    let inner = linalg::extreme_points(inner_points)?;
    for p in &inner {
        if in_conv(&outer.points, p)?.is_none() {
            return Err(Error::Precondition("inner cell is not contained in the outer cell"));
        }
    }
    let others: Vec<&Vec<Rat>> =
        outer.points.iter().filter(|q| !inner.contains(q)).collect();
    let dim = outer.points.first().map(|p| p.len()).unwrap_or(0);
    supporting_functional(&inner, &others, dim, true).map(|w| w.is_some())
}

/// Whether the cone spanned by `inner_rays` (in the outer cone's quotient
/// coordinates) is a face of `outer`. Errors when not contained. Inner rays
/// are normalized to primitive form before comparison.
pub fn is_face_of_cone(inner_rays: &[Vec<Rat>], outer: &QuotientCell) -> Result<bool> {
    assert!(outer.cone, "outer must be a cone");
    let mut inner: Vec<Vec<Rat>> = inner_rays
        .iter()
        .map(|r| primitive(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    inner.sort();
    inner.dedup();
    let inner = extreme_rays(&inner)?;
    for r in &inner {
        if in_cone(&outer.points, r)?.is_none() {
            return Err(Error::Precondition("inner cone is not contained in the outer cone"));
        }
    }
    let others: Vec<&Vec<Rat>> =
        outer.points.iter().filter(|q| !inner.contains(q)).collect();
    let dim = outer.points.first().map(|p| p.len()).unwrap_or(0);
    supporting_functional(&inner, &others, dim, false).map(|w| w.is_some())
}

/// Find an (affine when `affine`, else linear) functional vanishing on
/// `zero_set` and >= 1 on `positive_set`.
fn supporting_functional(
    zero_set: &[Vec<Rat>],
    positive_set: &[&Vec<Rat>],
    dim: usize,
    affine: bool,
) -> Result<Option<Vec<Rat>>> {
    let vars = dim + usize::from(affine);
    let mut constraints = Vec::new();
    let row = |p: &[Rat]| -> Vec<Rat> {
        let mut c: Vec<Rat> = p.to_vec();
        if affine {
            c.push(rat(1));
        }
        c
    };
    for p in zero_set {
        constraints.push(Constraint::new(row(p), Rel::Eq, zero()));
    }
    for q in positive_set {
        constraints.push(Constraint::new(row(q), Rel::Ge, rat(1)));
    }
    lp_feasible(vars, &constraints)
}

/// Relative-interior membership in a polytope cell: `p` lies in the cell and
/// no supporting functional vanishes at `p` without vanishing identically.
pub fn in_relative_interior(p: &[Rat], cell: &QuotientCell) -> Result<bool> {
    assert!(!cell.cone);
    if in_conv(&cell.points, p)?.is_none() {
        return Ok(false);
    }
    let dim = p.len();
    for w in &cell.points {
        // A face through p that excludes w would be witnessed by:
        // phi(p) = 0, phi >= 0 on all vertices, phi(w) >= 1.
        let mut constraints = Vec::new();
        let row = |x: &[Rat]| {
            let mut c = x.to_vec();
            c.push(rat(1));
            c
        };
        constraints.push(Constraint::new(row(p), Rel::Eq, zero()));
        for v in &cell.points {
            constraints.push(Constraint::new(row(v), Rel::Ge, zero()));
        }
        constraints.push(Constraint::new(row(w), Rel::Ge, rat(1)));
        if lp_feasible(dim + 1, &constraints)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-check that the fiber of the moduli cone over a length vector is
/// the divisor cell: two box corners are identified by the principal
/// quotient exactly when their refined lifts are identified by the refined
/// quotient, and the class counts agree.
pub fn fiber_matches_cell(
    g: &WeightedGraph,
    pd: &PseudoDivisor,
    lengths: &[Rat],
) -> Result<bool> {
    let bx = PositionBox::new(g, pd.edges, lengths)?;
    let cell = divisor_cell(g, pd, lengths)?;
    let cone = moduli_cone(g, pd)?;
    let refinement = g.refine(pd.edges);
    let lift = |x: &[Rat]| -> Vec<Rat> {
        let mut v = vec![zero(); refinement.graph.n_edges()];
        for (i, img) in refinement.edge_images.iter().enumerate() {
            match img {
                RefinedEdge::Kept(j) => v[*j] = lengths[i].clone(),
                RefinedEdge::Split { s_half, t_half, .. } => {
                    let k = bx.edges.iter().position(|&e| e == i).unwrap();
                    v[*s_half] = x[k].clone();
                    v[*t_half] = &lengths[i] - &x[k];
                }
            }
        }
        v
    };
    let corners = bx.corners();
    let cell_images: Vec<Vec<Rat>> = corners.iter().map(|c| cell.project(c)).collect();
    let cone_images: Vec<Vec<Rat>> = corners.iter().map(|c| cone.project(&lift(c))).collect();
    for i in 0..corners.len() {
        for j in i + 1..corners.len() {
            if (cell_images[i] == cell_images[j]) != (cone_images[i] == cone_images[j]) {
                return Ok(false);
            }
        }
    }
    let count = |v: &[Vec<Rat>]| {
        let mut s = v.to_vec();
        s.sort();
        s.dedup();
        s.len()
    };
    Ok(count(&cell_images) == count(&cone_images))
}

/// Length vector read off the moduli cone's pre-quotient coordinates: the
/// half-sum map, descending to the quotient because the refined subspace
/// sums to zero on each split pair.
pub fn cone_length_projection(g: &WeightedGraph, pd: &PseudoDivisor) -> (RatMatrix, RatMatrix) {
    edge_maps(g, pd.edges)
}

/// Evaluate a functional row on a point (exposed for report assembly).
pub fn functional_value(coeffs: &[Rat], p: &[Rat]) -> Rat {
    dot(coeffs, p)
}
