mod common;

use common::{dy, points, rat};
use dyconvex::classify::segment_type;
use dyconvex::generators::{
    generates, generating_set_polytope, generating_set_semipolytope, inner_simplex, irredundant_reduce,
    is_irredundant, min_exp_relint_point, polytope_descriptor, three_point_generates_interval, wall_line_triple,
};
use dyconvex::groupoid::{member, GeneratorSet};
use dyconvex::hull::{affine_rank, convex_hull};
use dyconvex::{affine_combination, Dyadic, DyadicPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn line(xs: &[Dyadic]) -> Vec<DyadicPoint> {
    xs.iter().map(|x| DyadicPoint::new(vec![x.clone()]).unwrap()).collect()
}

/// A strictly interior point: weights `w_i + 1` over the hull's vertices, normalized to a power of 2.
fn interior(vs: &[DyadicPoint], w: &[i64]) -> DyadicPoint {
    let mut w: Vec<i64> = vs.iter().enumerate().map(|(i, _)| w[i % w.len()] + 1).collect();
    let total: i64 = w.iter().sum();
    let pow = (total as u64).next_power_of_two() as i64;
    w[0] += pow - total;
    let weights: Vec<Dyadic> = w.iter().map(|&k| dy(k, -i64::from(pow.trailing_zeros()))).collect();
    affine_combination(vs, &weights).unwrap()
}

#[test]
fn three_points_with_a_simplex_side_generate() {
    // a simplex side suffices, it is not necessary: {0, 3, 8} generates [0, 8] already from its ends
    let mut hits = 0;
    for a in 0..=20i64 {
        for b in a + 1..=20 {
            for c in b + 1..=20 {
                let xs = [dy(a, 0), dy(b, 0), dy(c, 0)];
                let target = polytope_descriptor(&convex_hull(&line(&[xs[0].clone(), xs[2].clone()])).unwrap()).unwrap();
                let want = generates(&line(&xs), &target).unwrap();
                if three_point_generates_interval(&xs[0], &xs[1], &xs[2]).unwrap() {
                    assert!(want, "{a} < {b} < {c}");
                    hits += 1;
                }
            }
        }
    }
    for e in 1..=6 {
        for k in 1..64i64 {
            let xs = [dy(0, 0), dy(k, -e), dy(1, 0)];
            if k >= 1 << e {
                continue;
            }
            let target = polytope_descriptor(&convex_hull(&line(&[xs[0].clone(), xs[2].clone()])).unwrap()).unwrap();
            let want = generates(&line(&xs), &target).unwrap();
            if three_point_generates_interval(&xs[0], &xs[1], &xs[2]).unwrap() {
                assert!(want, "0 < {k}/2^{e} < 1");
            }
            // [0, 1] is a simplex, so the three points always generate it
            assert!(want);
        }
    }
    assert!(hits > 100);
}

#[test]
fn segments_need_two_points_iff_type_one() {
    for k in 1..=40i64 {
        let seg = convex_hull(&line(&[dy(0, 0), dy(k, 0)])).unwrap();
        let cert = generating_set_polytope(&seg).unwrap().reduced().unwrap();
        assert!(cert.validate().unwrap());
        let odd = k >> k.trailing_zeros();
        assert_eq!(cert.produced.len() == 2, odd == 1, "k = {k}");
        assert!(cert.produced.len() <= 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polygon_certificates_validate(ps in points(2, 3..=5, 4, 1)) {
        prop_assume!(affine_rank(&ps) == 2);
        let poly = convex_hull(&ps).unwrap();
        let cert = generating_set_polytope(&poly).unwrap();
        prop_assert!(cert.validate().unwrap());
        let reduced = cert.reduced().unwrap();
        prop_assert!(reduced.validate().unwrap());
        prop_assert!(is_irredundant(&reduced.generator_set().unwrap()).unwrap());
    }

    #[test]
    fn semipolytope_certificates_validate(ps in points(2, 1..=5, 6, 2)) {
        let g = GeneratorSet::new(ps.clone()).unwrap();
        let cert = generating_set_semipolytope(g.descriptor()).unwrap();
        prop_assert!(cert.validate().unwrap());
        let again = GeneratorSet::new(cert.produced.clone()).unwrap();
        for p in &ps {
            prop_assert!(member(p, &again).unwrap());
        }
    }

    #[test]
    fn reduction_is_elementwise_irredundant(ps in points(2, 1..=7, 6, 2)) {
        let g = GeneratorSet::new(ps).unwrap();
        let r = irredundant_reduce(&g).unwrap();
        prop_assert!(generates(r.points(), g.descriptor()).unwrap());
        for p in r.points().iter().filter(|_| r.len() > 1) {
            let rest = r.without(p).unwrap();
            prop_assert!(!generates(rest.points(), g.descriptor()).unwrap(), "{} is redundant", p);
        }
    }

    #[test]
    fn inner_simplices_are_contained_and_geometric(ps in points(2, 3..=5, 6, 1), w in proptest::collection::vec(0i64..=3, 5)) {
        prop_assume!(affine_rank(&ps) == 2);
        let poly = convex_hull(&ps).unwrap();
        let a = interior(poly.vertices(), &w);
        let s = inner_simplex(&poly, &a).unwrap();
        prop_assert_eq!(s.len(), 3);
        prop_assert_eq!(&s[0], &a);
        prop_assert_eq!(affine_rank(&s), 2);
        for v in &s {
            prop_assert!(poly.contains(v).unwrap());
        }
        prop_assert!(GeneratorSet::new(s).unwrap().descriptor().is_geometric());
    }

    #[test]
    fn wall_line_triples(ps in points(2, 3..=5, 6, 1), w in proptest::collection::vec(0i64..=3, 5)) {
        prop_assume!(affine_rank(&ps) == 2);
        let poly = convex_hull(&ps).unwrap();
        let s = polytope_descriptor(&poly).unwrap();
        let centre = min_exp_relint_point(s.top_subspace(), &poly).unwrap();
        let simplex = inner_simplex(&poly, &centre).unwrap();
        let a = interior(poly.vertices(), &w);
        let sh = convex_hull(&simplex).unwrap();
        prop_assume!(!sh.contains(&a).unwrap());
        let t = wall_line_triple(&s, &simplex, &a).unwrap();
        // A = B + u (C - B) with 0 < u < 1
        let q = |p: &DyadicPoint, i: usize| rat(p.coord(i));
        let (bx, by) = (q(&t.c, 0) - q(&t.b, 0), q(&t.c, 1) - q(&t.b, 1));
        let (ax, ay) = (q(&a, 0) - q(&t.b, 0), q(&a, 1) - q(&t.b, 1));
        prop_assert_eq!(&bx * &ay - &by * &ax, BigRational::zero());
        let u = if bx.is_zero() { &ay / &by } else { &ax / &bx };
        prop_assert!(u > BigRational::zero() && u < BigRational::one());
        // D on the same line
        let (dx, dy_) = (q(&t.d, 0) - q(&t.b, 0), q(&t.d, 1) - q(&t.b, 1));
        prop_assert_eq!(&bx * &dy_ - &by * &dx, BigRational::zero());
        prop_assert_eq!(segment_type(&t.d, &t.c).unwrap(), BigInt::one());
        prop_assert!(poly.face_contains(t.wall, &t.b).unwrap());
        prop_assert_eq!(poly.faces().faces[t.wall].dim, 1);
        prop_assert!(sh.contains(&t.c).unwrap() && sh.contains(&t.d).unwrap());
        prop_assert!(member(&a, &GeneratorSet::new(vec![t.b, t.c, t.d]).unwrap()).unwrap());
    }
}
