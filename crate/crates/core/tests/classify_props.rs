mod common;

use common::{dyadic, point, rat};
use dyconvex::classify::{
    boundary_type, classify_representative, interval_type, normalize_all_pointings, segment_type, TriangleClass,
};
use dyconvex::groupoid::GeneratorSet;
use dyconvex::hull::affine_rank;
use dyconvex::DyadicPoint;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn odd(mut k: u64) -> u64 {
    while k > 0 && k.is_multiple_of(2) {
        k /= 2;
    }
    k
}

/// The three representative families written out directly.
fn oracle(i: u64, j: u64, m: u64, n: u64) -> Option<TriangleClass> {
    let first_quadrant = i < m && n < j && gcd(i, m) % 2 == 1 && gcd(j, n) % 2 == 1;
    if !first_quadrant {
        return None;
    }
    let right = i == 0 && n == 0 && j % 2 == 1 && m % 2 == 1 && j <= m;
    let hat = n == 0 && 0 < i && 2 * i <= m && j % 2 == 1 && j > 1 && !i.is_multiple_of(j);
    let proper = |a: u64, b: u64| {
        let g = gcd(a, b);
        g > 1 && g < a && g < b
    };
    let other = i > 0 && n > 0 && j <= m && proper(i, j) && proper(m, n);
    match (right, hat, other) {
        (true, false, false) => Some(TriangleClass::Right),
        (false, true, false) => Some(TriangleClass::Hat),
        (false, false, true) => Some(TriangleClass::Other),
        (false, false, false) => None,
        _ => panic!("families overlap at ({i},{j},{m},{n})"),
    }
}

fn det2(a: &DyadicPoint, b: &DyadicPoint, c: &DyadicPoint) -> BigRational {
    let d = |p: &DyadicPoint, q: &DyadicPoint, k: usize| rat(q.coord(k)) - rat(p.coord(k));
    d(a, b, 0) * d(a, c, 1) - d(a, b, 1) * d(a, c, 0)
}

/// Odd part of a nonzero dyadic rational.
fn odd_of(q: &BigRational) -> BigInt {
    let mut n = q.numer().abs();
    while (&n % 2u8) == BigInt::from(0) {
        n >>= 1;
    }
    n
}

#[test]
fn representatives_agree_with_the_families() {
    let mut seen = [0usize; 3];
    for i in 0..=31 {
        for j in 0..=31 {
            for m in 0..=31 {
                for n in 0..=31 {
                    let got = classify_representative(i, j, m, n).ok();
                    assert_eq!(got, oracle(i, j, m, n), "({i},{j},{m},{n})");
                    if let Some(c) = got {
                        seen[c as usize] += 1;
                    }
                }
            }
        }
    }
    assert!(seen.iter().all(|&k| k > 0), "{seen:?}");
}

#[test]
fn axis_segments_have_odd_part_type() {
    let o = DyadicPoint::from_ints(&[0, 0]);
    for m in 1..=100i64 {
        let t = segment_type(&o, &DyadicPoint::from_ints(&[m, 0])).unwrap();
        assert_eq!(t, BigInt::from(odd(m as u64)), "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn interval_type_is_invariant(xs in proptest::collection::vec(dyadic(64, 4), 2..=5), a in -5i64..=5, neg in any::<bool>(), d in dyadic(100, 6)) {
        let ps: Vec<DyadicPoint> = xs.iter().map(|x| DyadicPoint::new(vec![x.clone()]).unwrap()).collect();
        prop_assume!(affine_rank(&ps) == 1);
        let moved: Vec<DyadicPoint> = xs
            .iter()
            .map(|x| {
                let y = x.mul_pow2(a).unwrap();
                let y = if neg { -y } else { y };
                DyadicPoint::new(vec![y.checked_add(&d).unwrap()]).unwrap()
            })
            .collect();
        let t = interval_type(&GeneratorSet::new(ps).unwrap()).unwrap().type_k;
        let u = interval_type(&GeneratorSet::new(moved).unwrap()).unwrap().type_k;
        prop_assert!(t >= BigInt::from(1));
        prop_assert_eq!(t, u);
    }

    #[test]
    fn boundary_type_follows_vertex_order(vs in proptest::collection::vec(point(2, 24, 3), 3), perm in 0usize..6) {
        prop_assume!(affine_rank(&vs) == 2);
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let o = orders[perm];
        let base = boundary_type(&vs[0], &vs[1], &vs[2]).unwrap();
        let moved = boundary_type(&vs[o[0]], &vs[o[1]], &vs[o[2]]).unwrap();
        for k in 0..3 {
            prop_assert_eq!(&moved[k], &base[o[k]]);
        }
    }

    #[test]
    fn normalization_maps_vertices(vs in proptest::collection::vec(point(2, 6, 1), 3)) {
        prop_assume!(affine_rank(&vs) == 2);
        let all = normalize_all_pointings(&vs[0], &vs[1], &vs[2], 8).unwrap();
        let area = det2(&vs[0], &vs[1], &vs[2]);
        prop_assert!(all.iter().any(|nz| nz.is_some()));
        for nz in all.into_iter().flatten() {
            let rep = nz.descriptor.vertices();
            let mut img: Vec<DyadicPoint> = vs.iter().map(|v| nz.map.apply(v).unwrap()).collect();
            prop_assert_eq!(&img[nz.pointed_at], &rep[0]);
            img.sort();
            let mut want = rep.to_vec();
            want.sort();
            prop_assert_eq!(img, want);
            prop_assert_eq!(odd_of(&det2(&rep[0], &rep[1], &rep[2])), odd_of(&area));
            let inv = nz.map.invert().unwrap();
            for v in &vs {
                prop_assert_eq!(&inv.apply(&nz.map.apply(v).unwrap()).unwrap(), v);
            }
            let det = nz.map.det();
            prop_assert!(det.mantissa().abs() == BigInt::from(1));
            let (i, j, m, n) = nz.descriptor.params();
            prop_assert_eq!(Some(nz.descriptor.class), oracle(i, j, m, n));
        }
    }
}

#[test]
fn unit_right_triangle_normalizes_to_the_smallest_right_class() {
    let vs = [
        DyadicPoint::from_ints(&[0, 0]),
        DyadicPoint::from_ints(&[1, 0]),
        DyadicPoint::from_ints(&[0, 1]),
    ];
    for nz in normalize_all_pointings(&vs[0], &vs[1], &vs[2], 6).unwrap() {
        let nz = nz.expect("a unimodular triangle normalizes at every vertex");
        assert_eq!(nz.descriptor.class, TriangleClass::Right);
        assert_eq!(nz.descriptor.params(), (0, 1, 1, 0));
    }
}
