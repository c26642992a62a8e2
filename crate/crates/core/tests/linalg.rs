//! Exact rational linear algebra: elimination, kernels, feasibility engines
//! (cross-checked against each other), convexity certificates, and quotient
//! coordinates.

mod common;

use common::{rr, rv};
use proptest::prelude::*;
use tropjac_core::linalg::{
    dot, extreme_points, fourier_motzkin, in_cone, in_conv, lp_feasible, simplex_feasible,
    span_membership, spans_equal, Constraint, QuotientMap, RatMatrix, Rel,
};
use tropjac_core::rat::{rat, zero};
use tropjac_core::{Error, Rat};

fn c(coeffs: &[i64], rel: Rel, rhs: i64) -> Constraint {
    Constraint::new(rv(coeffs), rel, rat(rhs))
}

#[test]
fn rref_and_rank() {
    let mut m = RatMatrix::from_rows(vec![rv(&[1, 2, 3]), rv(&[2, 4, 6]), rv(&[0, 1, 1])]);
    let pivots = m.rref();
    assert_eq!(pivots, vec![0, 1]);
    assert_eq!(m.rank(), 2);
    assert_eq!(RatMatrix::identity(3).rank(), 3);
    assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
}

#[test]
fn kernel_annihilates() {
    let m = RatMatrix::from_rows(vec![rv(&[1, 1, 0]), rv(&[0, 1, 1])]);
    let k = m.kernel();
    assert_eq!(k.len(), 1);
    for v in &k {
        assert!(m.mat_vec(v).iter().all(|x| *x == zero()));
    }
    // Full-rank square matrix: trivial kernel.
    assert!(RatMatrix::identity(3).kernel().is_empty());
}

#[test]
fn solve_square_and_inconsistent() {
    let m = RatMatrix::from_rows(vec![rv(&[2, 0]), rv(&[1, 1])]);
    let x = tropjac_core::linalg::solve(&m, &rv(&[4, 5])).unwrap();
    assert_eq!(x, vec![rat(2), rat(3)]);
    let bad = RatMatrix::from_rows(vec![rv(&[1, 1]), rv(&[1, 1])]);
    assert!(tropjac_core::linalg::solve(&bad, &rv(&[0, 1])).is_none());
}

#[test]
fn span_membership_and_equality() {
    let basis = vec![rv(&[1, 1, 0]), rv(&[0, 0, 1])];
    let coeffs = span_membership(&basis, &rv(&[2, 2, 5])).unwrap();
    let mut recon = vec![zero(); 3];
    for (ci, b) in coeffs.iter().zip(&basis) {
        for (r, x) in recon.iter_mut().zip(b) {
            *r += ci * x;
        }
    }
    assert_eq!(recon, rv(&[2, 2, 5]));
    assert!(span_membership(&basis, &rv(&[1, 0, 0])).is_none());
    assert!(spans_equal(&basis, &[rv(&[1, 1, 1]), rv(&[0, 0, 2])]));
    assert!(!spans_equal(&basis, &[rv(&[1, 1, 0])]));
}

#[test]
fn fm_feasible_with_strict_bounds() {
    // 0 < x < 1, x + y = 1, y > 0.
    let cons = vec![
        c(&[1, 0], Rel::Gt, 0),
        c(&[-1, 0], Rel::Gt, -1),
        c(&[1, 1], Rel::Eq, 1),
        c(&[0, 1], Rel::Gt, 0),
    ];
    let x = fourier_motzkin(2, &cons).unwrap().unwrap();
    for con in &cons {
        assert!(con.holds(&x));
    }
}

#[test]
fn fm_detects_empty_open_interval() {
    let cons = vec![c(&[1], Rel::Gt, 0), c(&[-1], Rel::Ge, 0)];
    assert!(fourier_motzkin(1, &cons).unwrap().is_none());
    // The closed version is satisfiable at exactly zero.
    let closed = vec![c(&[1], Rel::Ge, 0), c(&[-1], Rel::Ge, 0)];
    assert_eq!(fourier_motzkin(1, &closed).unwrap(), Some(vec![zero()]));
}

#[test]
fn fm_guards_variable_count() {
    let cons: Vec<Constraint> = (0..13).map(|i| {
        let mut co = vec![0i64; 13];
        co[i] = 1;
        c(&co, Rel::Gt, 0)
    })
    .collect();
    assert!(matches!(fourier_motzkin(13, &cons), Err(Error::LpTooLarge { .. })));
}

#[test]
fn simplex_matches_fm_on_fixed_cases() {
    let systems: Vec<Vec<Constraint>> = vec![
        vec![c(&[1, 1], Rel::Ge, 1), c(&[-1, -1], Rel::Ge, -1)],
        vec![c(&[1, 0], Rel::Ge, 2), c(&[-1, 0], Rel::Ge, -1)],
        vec![c(&[1, 2], Rel::Eq, 3), c(&[1, -1], Rel::Ge, 0), c(&[0, 1], Rel::Ge, 0)],
        vec![c(&[1, 1], Rel::Eq, 1), c(&[1, 1], Rel::Eq, 2)],
    ];
    for cons in &systems {
        let a = fourier_motzkin(2, cons).unwrap();
        let b = simplex_feasible(2, cons).unwrap();
        assert_eq!(a.is_some(), b.is_some());
        for x in [&a, &b].into_iter().flatten() {
            for con in cons {
                assert!(con.holds(x));
            }
        }
    }
}

#[test]
fn lp_feasible_rejects_bad_width() {
    let cons = vec![c(&[1, 0], Rel::Ge, 0)];
    assert!(matches!(lp_feasible(3, &cons), Err(Error::ShapeMismatch { .. })));
}

#[test]
fn lp_feasible_survives_elimination_blowup() {
    // A dense non-strict system small enough for the elimination fast path
    // but whose pairwise combinations overflow its row budget; feasibility
    // must still be decided (by falling back to the simplex). The origin
    // satisfies every row, so the verdict is known in advance.
    let mut state = 0x243f_6a88_85a3_08d3u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 11) as i64 - 5
    };
    let cons: Vec<Constraint> = (0..32)
        .map(|_| {
            let coeffs: Vec<i64> = (0..7).map(|_| next()).collect();
            c(&coeffs, Rel::Ge, -1000)
        })
        .collect();
    assert!(matches!(fourier_motzkin(7, &cons), Err(Error::LpTooLarge { .. })));
    let x = lp_feasible(7, &cons).unwrap().expect("origin is feasible");
    for con in &cons {
        assert!(con.holds(&x));
    }
}

#[test]
fn cone_and_hull_membership() {
    let gens = vec![rv(&[1, 0]), rv(&[0, 1])];
    assert!(in_cone(&gens, &rv(&[3, 5])).unwrap().is_some());
    assert!(in_cone(&gens, &rv(&[-1, 0])).unwrap().is_none());
    assert!(in_cone(&gens, &rv(&[0, 0])).unwrap().is_some());

    let square = vec![rv(&[0, 0]), rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])];
    let mid = vec![rr(1, 2), rr(1, 2)];
    let lambda = in_conv(&square, &mid).unwrap().unwrap();
    assert_eq!(lambda.iter().sum::<Rat>(), rat(1));
    assert!(in_conv(&square, &rv(&[2, 0])).unwrap().is_none());
    // Boundary membership is closed.
    assert!(in_conv(&square, &[rr(1, 2), zero()]).unwrap().is_some());
}

#[test]
fn extreme_point_reduction() {
    let mut pts = vec![rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 2]), rv(&[2, 2])];
    pts.push(vec![rr(1, 2), rr(1, 2)]);
    pts.push(rv(&[1, 0]));
    let ext = extreme_points(&pts).unwrap();
    assert_eq!(ext.len(), 4);
    for p in [rv(&[0, 0]), rv(&[2, 0]), rv(&[0, 2]), rv(&[2, 2])] {
        assert!(ext.contains(&p));
    }
}

#[test]
fn quotient_map_coordinates() {
    let q = QuotientMap::new(3, &[rv(&[1, 1, 1])]);
    assert_eq!(q.dim(), 2);
    assert_eq!(q.complement, vec![1, 2]);
    assert_eq!(q.apply(&rv(&[1, 0, 0])), rv(&[-1, -1]));
    assert_eq!(q.apply(&rv(&[0, 1, 0])), rv(&[1, 0]));
    // The subspace itself maps to zero.
    assert_eq!(q.apply(&rv(&[5, 5, 5])), rv(&[0, 0]));
    // Trivial quotient is the identity.
    let id = QuotientMap::new(2, &[]);
    assert_eq!(id.apply(&rv(&[3, 4])), rv(&[3, 4]));
}

#[test]
fn dot_product() {
    assert_eq!(dot(&rv(&[1, 2, 3]), &rv(&[4, 5, 6])), rat(32));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The two feasibility engines agree on random small closed systems.
    #[test]
    fn engines_agree(rows in proptest::collection::vec(
        (proptest::collection::vec(-3i64..=3, 3), -2i64..=2, 0u8..=1),
        1..6,
    )) {
        let cons: Vec<Constraint> = rows
            .iter()
            .map(|(coeffs, rhs, rel)| {
                let rel = if *rel == 0 { Rel::Ge } else { Rel::Eq };
                c(coeffs, rel, *rhs)
            })
            .collect();
        let a = fourier_motzkin(3, &cons).unwrap();
        let b = simplex_feasible(3, &cons).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
        for x in [&a, &b].into_iter().flatten() {
            for con in &cons {
                prop_assert!(con.holds(x));
            }
        }
    }

    /// Convex combinations of points stay in the hull, with a certificate.
    #[test]
    fn hull_contains_averages(
        pts in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 1..5)
    ) {
        let gens: Vec<Vec<Rat>> = pts.iter().map(|p| rv(p)).collect();
        let k = rat(gens.len() as i64);
        let mut avg = vec![zero(); 2];
        for g in &gens {
            for (a, x) in avg.iter_mut().zip(g) {
                *a += x / &k;
            }
        }
        prop_assert!(in_conv(&gens, &avg).unwrap().is_some());
    }

    /// Quotient coordinates kill exactly the subspace.
    #[test]
    fn quotient_kernel_is_subspace(
        v in proptest::collection::vec(-3i64..=3, 4),
        w in proptest::collection::vec(-3i64..=3, 4),
        x in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let sub = vec![rv(&v), rv(&w)];
        let q = QuotientMap::new(4, &sub);
        let xr = rv(&x);
        let image_zero = q.apply(&xr).iter().all(|t| *t == zero());
        let in_span = span_membership(&sub, &xr).is_some();
        prop_assert_eq!(image_zero, in_span);
    }
}
