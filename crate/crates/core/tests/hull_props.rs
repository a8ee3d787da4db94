mod common;

use std::collections::BTreeSet;

use common::{dy, points, rat};
use dyconvex::hull::{affine_rank, convex_hull};
use dyconvex::linalg::{nullspace, primitive_integer};
use dyconvex::{affine_combination, DyadicPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(p: &DyadicPoint) -> Vec<BigRational> {
    p.coords().iter().map(rat).collect()
}

fn dot(n: &[BigInt], x: &[BigRational]) -> BigRational {
    n.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).fold(BigRational::zero(), |s, t| s + t)
}

/// Facets of a full-dimensional point set by trying every hyperplane through `dim` points.
fn brute_facets(ps: &[DyadicPoint], dim: usize) -> BTreeSet<(Vec<BigInt>, BigRational)> {
    let mut out = BTreeSet::new();
    let n = ps.len();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let sub: Vec<DyadicPoint> = idx.iter().map(|&i| ps[i].clone()).collect();
        if affine_rank(&sub) == dim - 1 {
            let base = q(&sub[0]);
            let rows: Vec<Vec<BigRational>> = sub[1..]
                .iter()
                .map(|s| q(s).iter().zip(&base).map(|(a, b)| a - b).collect())
                .collect();
            let normal = if dim == 1 {
                vec![BigInt::from(1)]
            } else {
                let ns = nullspace(&rows, dim);
                primitive_integer(&ns[0])
            };
            for sign in [1, -1] {
                let nrm: Vec<BigInt> = normal.iter().map(|x| x * sign).collect();
                let off = dot(&nrm, &base);
                if ps.iter().all(|p| dot(&nrm, &q(p)) >= off) {
                    out.insert((nrm, off));
                }
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - dim + k {
                idx[k] += 1;
                for l in k + 1..dim {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hull_contains_points_and_vertices_are_inputs(dim in 1usize..=3, ps in points(3, 1..=8, 6, 2)) {
        let ps: Vec<DyadicPoint> = ps.iter().map(|p| DyadicPoint::new(p.coords()[..dim].to_vec()).unwrap()).collect();
        let h = convex_hull(&ps).unwrap();
        for p in &ps {
            prop_assert!(h.contains(p).unwrap());
        }
        for v in h.vertices() {
            prop_assert!(ps.contains(v));
            // a vertex is not in the hull of the other points
            let others: Vec<DyadicPoint> = ps.iter().filter(|p| *p != v).cloned().collect();
            if !others.is_empty() {
                prop_assert!(!convex_hull(&others).unwrap().contains(v).unwrap());
            }
        }
        prop_assert_eq!(h.dim(), affine_rank(&ps));
    }

    #[test]
    fn facets_match_brute_force(dim in 1usize..=3, ps in points(3, 1..=7, 4, 1)) {
        let ps: Vec<DyadicPoint> = ps.iter().map(|p| DyadicPoint::new(p.coords()[..dim].to_vec()).unwrap()).collect();
        prop_assume!(affine_rank(&ps) == dim);
        let mut uniq = ps.clone();
        uniq.sort();
        uniq.dedup();
        let h = convex_hull(&uniq).unwrap();
        let got: BTreeSet<(Vec<BigInt>, BigRational)> = h
            .facets()
            .iter()
            .map(|f| (f.normal.clone(), rat(&f.offset)))
            .collect();
        prop_assert_eq!(got, brute_facets(&uniq, dim));
    }

    #[test]
    fn minimal_face_is_the_unique_relint_face(ps in points(2, 1..=7, 4, 1), w in proptest::collection::vec(0i64..=3, 7)) {
        let h = convex_hull(&ps).unwrap();
        // convex combination with weights w_i / sum, sum a power of two
        let mut w: Vec<i64> = w[..ps.len()].to_vec();
        let total: i64 = w.iter().sum();
        let pow = (total.max(1) as u64).next_power_of_two() as i64;
        w[0] += pow - total;
        let weights: Vec<_> = w.iter().map(|&k| dy(k, -(pow.trailing_zeros() as i64))).collect();
        let x = affine_combination(&ps, &weights).unwrap();
        prop_assert!(h.contains(&x).unwrap());
        let f = h.minimal_face(&x).unwrap();
        let hits: Vec<usize> = (0..h.faces().faces.len())
            .filter(|&g| h.face_polytope(g).relint_contains(&x).unwrap())
            .collect();
        prop_assert_eq!(hits, vec![f]);
    }

    #[test]
    fn planar_face_counts(ps in points(2, 3..=8, 5, 1)) {
        prop_assume!(affine_rank(&ps) == 2);
        let h = convex_hull(&ps).unwrap();
        let v = h.faces().of_dim(0).count();
        let e = h.faces().of_dim(1).count();
        prop_assert_eq!(v, e);
        prop_assert_eq!(h.faces().faces.len(), v + e + 1);
        prop_assert_eq!(v, h.vertices().len());
        prop_assert_eq!(h.faces().top(), h.faces().faces.len() - 1);
    }
}
