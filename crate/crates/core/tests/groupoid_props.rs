mod common;

use common::{affine_map, point, points, rat};
use dyconvex::groupoid::{closure_bfs, equals_groupoid, member, ClosureOptions, GeneratorSet};
use dyconvex::hull::affine_rank;
use dyconvex::DyadicPoint;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn set(ps: &[DyadicPoint]) -> GeneratorSet {
    GeneratorSet::new(ps.to_vec()).unwrap()
}

fn is_dyadic(q: &BigRational) -> bool {
    let d = q.denom();
    (d & (d - BigInt::one())).is_zero()
}

/// Barycentric coordinates of `x` with respect to an affinely independent set of
/// 2 points on a line or 3 points in the plane.
fn barycentric(vs: &[DyadicPoint], x: &DyadicPoint) -> Option<Vec<BigRational>> {
    let c = |p: &DyadicPoint, i: usize| rat(p.coord(i));
    match (x.dim(), vs.len()) {
        (1, 2) => {
            let t = (c(x, 0) - c(&vs[0], 0)) / (c(&vs[1], 0) - c(&vs[0], 0));
            Some(vec![BigRational::one() - &t, t])
        }
        (2, 3) => {
            let (ax, ay) = (c(&vs[1], 0) - c(&vs[0], 0), c(&vs[1], 1) - c(&vs[0], 1));
            let (bx, by) = (c(&vs[2], 0) - c(&vs[0], 0), c(&vs[2], 1) - c(&vs[0], 1));
            let (px, py) = (c(x, 0) - c(&vs[0], 0), c(x, 1) - c(&vs[0], 1));
            let det = &ax * &by - &ay * &bx;
            let s = (&px * &by - &py * &bx) / &det;
            let t = (&ax * &py - &ay * &px) / &det;
            Some(vec![BigRational::one() - &s - &t, s, t])
        }
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generators_are_members_and_membership_is_monotone(ps in points(2, 1..=5, 12, 3), y in point(2, 12, 3), x in point(2, 12, 4)) {
        let g = set(&ps);
        for p in &ps {
            prop_assert!(member(p, &g).unwrap());
        }
        let mut more = ps.clone();
        more.push(y);
        if member(&x, &g).unwrap() {
            prop_assert!(member(&x, &set(&more)).unwrap());
        }
    }

    #[test]
    fn membership_is_affine_invariant(ps in points(2, 1..=4, 12, 3), x in point(2, 12, 4), m in affine_map(2)) {
        let image: Vec<DyadicPoint> = ps.iter().map(|p| m.apply(p).unwrap()).collect();
        prop_assert_eq!(member(&x, &set(&ps)).unwrap(), member(&m.apply(&x).unwrap(), &set(&image)).unwrap());
    }

    #[test]
    fn simplex_membership_is_dyadic_barycentric(dim in 1usize..=2, vs in points(2, 3..=3, 10, 2), x in point(2, 10, 4)) {
        let vs: Vec<DyadicPoint> = vs[..dim + 1].iter().map(|p| DyadicPoint::new(p.coords()[..dim].to_vec()).unwrap()).collect();
        let x = DyadicPoint::new(x.coords()[..dim].to_vec()).unwrap();
        prop_assume!(affine_rank(&vs) == dim);
        let bary = barycentric(&vs, &x).unwrap();
        let want = bary.iter().all(|b| !b.is_negative() && is_dyadic(b));
        prop_assert_eq!(member(&x, &set(&vs)).unwrap(), want);
    }

    #[test]
    fn groupoid_equality_is_an_equivalence(a in points(2, 1..=4, 6, 2), b in points(2, 1..=4, 6, 2), c in points(2, 1..=4, 6, 2)) {
        let (x, y, z) = (set(&a), set(&b), set(&c));
        prop_assert!(equals_groupoid(&x, &x).unwrap());
        prop_assert_eq!(equals_groupoid(&x, &y).unwrap(), equals_groupoid(&y, &x).unwrap());
        if equals_groupoid(&x, &y).unwrap() && equals_groupoid(&y, &z).unwrap() {
            prop_assert!(equals_groupoid(&x, &z).unwrap());
        }
    }

    #[test]
    fn adding_a_member_keeps_the_groupoid(ps in points(2, 2..=4, 6, 2), i in 0usize..4, j in 0usize..4) {
        let (i, j) = (i % ps.len(), j % ps.len());
        let mid = dyconvex::midpoint(&ps[i], &ps[j]).unwrap();
        let mut more = ps.clone();
        more.push(mid);
        prop_assert!(equals_groupoid(&set(&ps), &set(&more)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_sound_and_reaches_generators(ps in points(2, 1..=4, 2, 1)) {
        let opts = ClosureOptions::with_limit(3, 2, 1 << 20);
        let report = closure_bfs(&ps, &opts).unwrap();
        let g = set(&ps);
        for p in &ps {
            prop_assert!(report.found.contains(p));
        }
        for q in &report.found {
            prop_assert!(q.denom_exp() <= 3);
            prop_assert!(member(q, &g).unwrap(), "{} found but not a member", q);
        }
        // the found list is sorted by exponent then coordinates
        for w in report.found.windows(2) {
            prop_assert!((w[0].denom_exp(), &w[0]) < (w[1].denom_exp(), &w[1]));
        }
    }
}
