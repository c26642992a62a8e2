//! Exact rational linear algebra and small linear programs.
//!
//! Everything here is over arbitrary-precision rationals: row reduction,
//! kernels, span membership, quotient coordinates, and two feasibility
//! engines — Fourier–Motzkin elimination (handles strict inequalities,
//! returns a verified witness) and a phase-one simplex with Bland's rule
//! (for the larger nonnegative membership systems). Problem sizes are
//! desk-scale by design; guards reject anything that would blow up.

use crate::rat::{rat, zero};
use crate::{Error, Rat, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// Variable-count ceiling for Fourier–Motzkin elimination.
pub const FM_MAX_VARS: usize = 12;
/// Constraint-count ceiling during elimination.
const FM_MAX_ROWS: usize = 50_000;
/// Pivot ceiling for the simplex.
const SIMPLEX_MAX_PIVOTS: usize = 200_000;

/// Dense matrix of rationals in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = rat(1);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// Reduce to reduced row echelon form in place; returns the pivot
    /// columns in ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.at(r, c).recip();
            for j in c..self.cols {
                let v = self.at(r, j).clone() * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j).clone() - &f * self.at(r, j);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`; one vector per free column,
    /// ascending.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let is_pivot = |c: usize| pivots.binary_search(&c).is_ok();
        for free in (0..self.cols).filter(|&c| !is_pivot(c)) {
            let mut v = vec![zero(); self.cols];
            v[free] = rat(1);
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(pi, free).clone();
            }
            debug_assert!(self.mat_vec(&v).iter().all(|x| x.is_zero()));
            basis.push(v);
        }
        basis
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(zero(), |acc, (x, y)| acc + x * y)
}

pub fn scale(v: &[Rat], c: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Coefficients expressing `v` in the span of `basis`, if it lies there.
pub fn span_membership(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let dim = v.len();
    // Solve B^T c = v for the coefficient vector c.
    let mut aug = RatMatrix::zeros(dim, basis.len() + 1);
    for (j, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), dim);
        for (i, x) in b.iter().enumerate() {
            *aug.at_mut(i, j) = x.clone();
        }
    }
    for (i, x) in v.iter().enumerate() {
        *aug.at_mut(i, basis.len()) = x.clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&basis.len()) {
        return None; // inconsistent
    }
    let mut coeffs = vec![zero(); basis.len()];
    for (pi, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = aug.at(pi, basis.len()).clone();
    }
    let mut check = vec![zero(); dim];
    for (c, b) in coeffs.iter().zip(basis) {
        check = add_vec(&check, &scale(b, c));
    }
    debug_assert_eq!(check, v);
    Some(coeffs)
}

/// Whether two families of vectors span the same subspace.
pub fn spans_equal(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    a.iter().all(|v| span_membership(b, v).is_some())
        && b.iter().all(|v| span_membership(a, v).is_some())
}

/// General linear solve `Mx = b`; free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = RatMatrix::zeros(m.rows, m.cols + 1);
    for (i, rhs) in b.iter().enumerate() {
        for j in 0..m.cols {
            *aug.at_mut(i, j) = m.at(i, j).clone();
        }
        *aug.at_mut(i, m.cols) = rhs.clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![zero(); m.cols];
    for (pi, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.at(pi, m.cols).clone();
    }
    debug_assert_eq!(m.mat_vec(&x), b);
    Some(x)
}

/// Linear projection onto the quotient of the ambient space by a subspace,
/// in coordinates given by the non-pivot axes of the subspace's reduced
/// basis. Kernel of `apply` is exactly the subspace.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub ambient_dim: usize,
    reduced: RatMatrix,
    pivots: Vec<usize>,
    /// Ambient axes surviving as quotient coordinates, ascending.
    pub complement: Vec<usize>,
}

impl QuotientMap {
    /// Quotient by the span of `subspace` inside `R^ambient_dim`.
    pub fn new(ambient_dim: usize, subspace: &[Vec<Rat>]) -> QuotientMap {
        let mut m = if subspace.is_empty() {
            RatMatrix::zeros(0, ambient_dim)
        } else {
            RatMatrix::from_rows(subspace.to_vec())
        };
        let pivots = m.rref();
        let complement: Vec<usize> =
            (0..ambient_dim).filter(|c| pivots.binary_search(c).is_err()).collect();
        QuotientMap { ambient_dim, reduced: m, pivots, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Image of an ambient vector in quotient coordinates.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        for (pi, &pc) in self.pivots.iter().enumerate() {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj -= &f * self.reduced.at(pi, j);
                }
            }
        }
        debug_assert!(self.pivots.iter().all(|&pc| w[pc].is_zero()));
        self.complement.iter().map(|&c| w[c].clone()).collect()
    }
}

/// Relation of a linear constraint `coeffs . x REL rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ge,
    Gt,
}

/// One linear constraint over rational variables.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, rhs: Rat) -> Constraint {
        Constraint { coeffs, rel, rhs }
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.rel {
            Rel::Eq => lhs == self.rhs,
            Rel::Ge => lhs >= self.rhs,
            Rel::Gt => lhs > self.rhs,
        }
    }
}

// An inequality `coeffs . x >= rhs` (or `>` when strict) used during
// elimination.
#[derive(Debug, Clone)]
struct Ineq {
    coeffs: Vec<Rat>,
    rhs: Rat,
    strict: bool,
}

/// Decide feasibility of a system of linear constraints, returning a
/// satisfying point when one exists. Dispatches to Fourier–Motzkin for
/// few-variable systems (required when strict inequalities are present) and
/// to the phase-one simplex otherwise.
pub fn lp_feasible(n_vars: usize, constraints: &[Constraint]) -> Result<Option<Vec<Rat>>> {
    for c in constraints {
        if c.coeffs.len() != n_vars {
            return Err(Error::ShapeMismatch {
                what: "constraint width",
                left: c.coeffs.len(),
                right: n_vars,
            });
        }
    }
    let has_strict = constraints.iter().any(|c| c.rel == Rel::Gt);
    if has_strict {
        // Only elimination understands open half-spaces.
        return fourier_motzkin(n_vars, constraints);
    }
    if n_vars <= FM_MAX_VARS && constraints.len() <= 32 {
        // Elimination is the fast path on small systems, but dense ones can
        // blow past its row budget; those fall through to the simplex.
        match fourier_motzkin(n_vars, constraints) {
            Err(Error::LpTooLarge { .. }) => {}
            other => return other,
        }
    }
    simplex_feasible(n_vars, constraints)
}

/// Fourier–Motzkin elimination with witness back-substitution. The witness
/// is checked against the original system before being returned.
pub fn fourier_motzkin(n_vars: usize, constraints: &[Constraint]) -> Result<Option<Vec<Rat>>> {
    if n_vars > FM_MAX_VARS {
        return Err(Error::LpTooLarge { vars: n_vars, max: FM_MAX_VARS });
    }
    // Normalize to >= / > inequalities.
    let mut sys: Vec<Ineq> = Vec::new();
    for c in constraints {
        match c.rel {
            Rel::Ge => sys.push(Ineq { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: false }),
            Rel::Gt => sys.push(Ineq { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: true }),
            Rel::Eq => {
                sys.push(Ineq { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), strict: false });
                sys.push(Ineq {
                    coeffs: c.coeffs.iter().map(|x| -x).collect(),
                    rhs: -c.rhs.clone(),
                    strict: false,
                });
            }
        }
    }
    // Eliminate variables one at a time, keeping snapshots for the
    // back-substitution pass.
    let mut levels: Vec<(usize, Vec<Ineq>)> = Vec::new();
    let mut alive: Vec<usize> = (0..n_vars).collect();
    while !alive.is_empty() {
        // Pick the live variable minimizing the product of bound counts.
        let (pos, neg) = {
            let mut best = (usize::MAX, alive[0]);
            for &k in &alive {
                let p = sys.iter().filter(|q| q.coeffs[k].is_positive()).count();
                let n = sys.iter().filter(|q| q.coeffs[k].is_negative()).count();
                let score = p * n + p + n;
                if score < best.0 {
                    best = (score, k);
                }
            }
            let k = best.1;
            (k, k)
        };
        let k = pos;
        let _ = neg;
        levels.push((k, sys.clone()));
        let mut next: Vec<Ineq> = Vec::new();
        let lowers: Vec<&Ineq> = sys.iter().filter(|q| q.coeffs[k].is_positive()).collect();
        let uppers: Vec<&Ineq> = sys.iter().filter(|q| q.coeffs[k].is_negative()).collect();
        for q in sys.iter().filter(|q| q.coeffs[k].is_zero()) {
            next.push(q.clone());
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: a x_k + r >= b  (a>0)  =>  x_k >= (b - r)/a
                // up: c x_k + s >= d  (c<0)  =>  x_k <= (d - s)/c
                // combine: (b - r)/a <= (d - s)/c  =>  c(b - r) >= a(d - s) flipped...
                // Work additively: multiply lo by (-c) > 0 and up by a > 0, add.
                if next.len() >= FM_MAX_ROWS {
                    return Err(Error::LpTooLarge { vars: next.len() + 1, max: FM_MAX_ROWS });
                }
                let a = &lo.coeffs[k];
                let c = &up.coeffs[k];
                let f_lo = -c.clone();
                let f_up = a.clone();
                let coeffs: Vec<Rat> = (0..n_vars)
                    .map(|j| &lo.coeffs[j] * &f_lo + &up.coeffs[j] * &f_up)
                    .collect();
                debug_assert!(coeffs[k].is_zero());
                next.push(Ineq {
                    coeffs,
                    rhs: &lo.rhs * &f_lo + &up.rhs * &f_up,
                    strict: lo.strict || up.strict,
                });
            }
        }
        sys = next;
        alive.retain(|&v| v != k);
    }
    // All variables gone: rows read `0 >= rhs` (or strict).
    for q in &sys {
        debug_assert!(q.coeffs.iter().all(|x| x.is_zero()));
        let ok = if q.strict { q.rhs.is_negative() } else { !q.rhs.is_positive() };
        if !ok {
            return Ok(None);
        }
    }
    // Back-substitute a witness, innermost elimination first.
    let mut x = vec![zero(); n_vars];
    for (k, level) in levels.iter().rev() {
        let mut lo: Option<(Rat, bool)> = None;
        let mut hi: Option<(Rat, bool)> = None;
        for q in level {
            let a = &q.coeffs[*k];
            if a.is_zero() {
                continue;
            }
            let mut rest = q.rhs.clone();
            for (j, (cj, xj)) in q.coeffs.iter().zip(&x).enumerate() {
                if j != *k {
                    rest -= cj * xj;
                }
            }
            let bound = rest / a;
            if a.is_positive() {
                if lo.as_ref().map(|(b, s)| bound > *b || (bound == *b && q.strict && !s)).unwrap_or(true) {
                    lo = Some((bound, q.strict));
                }
            } else if hi.as_ref().map(|(b, s)| bound < *b || (bound == *b && q.strict && !s)).unwrap_or(true) {
                hi = Some((bound, q.strict));
            }
        }
        x[*k] = match (&lo, &hi) {
            (None, None) => zero(),
            (Some((b, s)), None) => {
                if *s {
                    b + rat(1)
                } else {
                    b.clone()
                }
            }
            (None, Some((b, s))) => {
                if *s {
                    b - rat(1)
                } else {
                    b.clone()
                }
            }
            (Some((bl, sl)), Some((bh, sh))) => {
                debug_assert!(bl < bh || (bl == bh && !sl && !sh));
                if !sl {
                    // Closed below: the lower endpoint also satisfies the
                    // upper bound, strictly unless the interval is a point.
                    bl.clone()
                } else {
                    // Open below forces bl < bh; the midpoint clears both
                    // ends whatever their strictness.
                    (bl + bh) / rat(2)
                }
            }
        };
    }
    // A witness from elimination must satisfy the original system.
    for c in constraints {
        assert!(c.holds(&x), "eliminated witness failed original constraint");
    }
    Ok(Some(x))
}

/// Feasibility of `Eq`/`Ge` systems over free variables via the phase-one
/// simplex: free variables split into differences of nonnegative ones,
/// inequalities get surplus variables.
pub fn simplex_feasible(n_vars: usize, constraints: &[Constraint]) -> Result<Option<Vec<Rat>>> {
    let n_ge = constraints.iter().filter(|c| c.rel == Rel::Ge).count();
    if constraints.iter().any(|c| c.rel == Rel::Gt) {
        return Err(Error::Precondition("simplex handles only closed constraints"));
    }
    let cols = 2 * n_vars + n_ge;
    let mut a = RatMatrix::zeros(constraints.len(), cols);
    let mut b = Vec::with_capacity(constraints.len());
    let mut ge_seen = 0;
    for (i, c) in constraints.iter().enumerate() {
        for j in 0..n_vars {
            *a.at_mut(i, 2 * j) = c.coeffs[j].clone();
            *a.at_mut(i, 2 * j + 1) = -c.coeffs[j].clone();
        }
        if c.rel == Rel::Ge {
            *a.at_mut(i, 2 * n_vars + ge_seen) = rat(-1);
            ge_seen += 1;
        }
        b.push(c.rhs.clone());
    }
    let Some(x) = nonneg_solution(&a, &b)? else {
        return Ok(None);
    };
    let witness: Vec<Rat> = (0..n_vars).map(|j| &x[2 * j] - &x[2 * j + 1]).collect();
    for c in constraints {
        assert!(c.holds(&witness), "simplex witness failed original constraint");
    }
    Ok(Some(witness))
}

/// Find `x >= 0` with `Ax = b`, exactly, via phase-one simplex with Bland's
/// rule. Returns `None` when no such point exists.
pub fn nonneg_solution(a: &RatMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let m = a.rows;
    let n = a.cols;
    assert_eq!(b.len(), m);
    // Tableau [A | I | b] with rows flipped so the right side is >= 0;
    // basis starts on the artificial identity block.
    let mut t = RatMatrix::zeros(m, n + m + 1);
    for (i, rhs) in b.iter().enumerate() {
        let flip = rhs.is_negative();
        for j in 0..n {
            *t.at_mut(i, j) = if flip { -a.at(i, j).clone() } else { a.at(i, j).clone() };
        }
        *t.at_mut(i, n + i) = rat(1);
        *t.at_mut(i, n + m) = if flip { -rhs.clone() } else { rhs.clone() };
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;
    loop {
        // Reduced cost of column j for the objective "sum of artificials":
        // c_j - sum over rows of c_basis(i) * t[i][j], artificials cost 1.
        let mut entering = None;
        for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let mut red = zero();
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= n {
                    red -= t.at(i, j);
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else {
            break;
        };
        // Ratio test, Bland tie-break on basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t.at(i, j).is_positive() {
                let ratio = t.at(i, n + m) / t.at(i, j);
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // Objective is bounded below by zero, so a negative reduced cost
            // always admits a leaving row; unboundedness cannot happen.
            unreachable!("phase-one simplex cannot be unbounded");
        };
        // Pivot on (r, j).
        let inv = t.at(r, j).recip();
        for c in 0..n + m + 1 {
            let v = t.at(r, c).clone() * &inv;
            *t.at_mut(r, c) = v;
        }
        for i in 0..m {
            if i != r && !t.at(i, j).is_zero() {
                let f = t.at(i, j).clone();
                for c in 0..n + m + 1 {
                    let v = t.at(i, c).clone() - &f * t.at(r, c);
                    *t.at_mut(i, c) = v;
                }
            }
        }
        basis[r] = j;
        pivots += 1;
        if pivots > SIMPLEX_MAX_PIVOTS {
            return Err(Error::LpTooLarge { vars: pivots, max: SIMPLEX_MAX_PIVOTS });
        }
    }
    // Optimal: objective value is the sum of basic artificial values.
    let residue: Rat = (0..m)
        .filter(|&i| basis[i] >= n)
        .fold(zero(), |acc, i| acc + t.at(i, n + m));
    if !residue.is_zero() {
        return Ok(None);
    }
    let mut x = vec![zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t.at(i, n + m).clone();
        }
    }
    debug_assert_eq!(a.mat_vec(&x), b);
    debug_assert!(x.iter().all(|v| !v.is_negative()));
    Ok(Some(x))
}

/// Whether `v` is a nonnegative combination of `gens`; returns the
/// combination when it is.
pub fn in_cone(gens: &[Vec<Rat>], v: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let dim = v.len();
    let mut a = RatMatrix::zeros(dim, gens.len());
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), dim);
        for (i, x) in g.iter().enumerate() {
            *a.at_mut(i, j) = x.clone();
        }
    }
    nonneg_solution(&a, v)
}

/// Whether `v` is a convex combination of `gens`; returns the weights when
/// it is.
pub fn in_conv(gens: &[Vec<Rat>], v: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if gens.is_empty() {
        return Ok(None);
    }
    let dim = v.len();
    let mut a = RatMatrix::zeros(dim + 1, gens.len());
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), dim);
        for (i, x) in g.iter().enumerate() {
            *a.at_mut(i, j) = x.clone();
        }
        *a.at_mut(dim, j) = rat(1);
    }
    let mut rhs = v.to_vec();
    rhs.push(rat(1));
    let sol = nonneg_solution(&a, &rhs)?;
    if let Some(lambda) = &sol {
        let total: Rat = lambda.iter().fold(zero(), |acc, l| acc + l);
        debug_assert!(total.is_one());
    }
    Ok(sol)
}

/// Drop generators that are convex combinations of the others, leaving the
/// extreme points of the hull (input points assumed distinct).
pub fn extreme_points(points: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let mut keep: Vec<Vec<Rat>> = Vec::new();
    let mut pending: Vec<Vec<Rat>> = points.to_vec();
    pending.sort();
    pending.dedup();
    let mut i = 0;
    while i < pending.len() {
        let others: Vec<Vec<Rat>> = pending
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if in_conv(&others, &pending[i])?.is_some() {
            pending.remove(i);
        } else {
            i += 1;
        }
    }
    keep.extend(pending);
    Ok(keep)
}
