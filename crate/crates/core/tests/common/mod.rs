#![allow(dead_code)]

use dyconvex::lattice::AffineMap;
use dyconvex::{Dyadic, DyadicPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub fn p(s: &str) -> DyadicPoint {
    s.parse().unwrap()
}

pub fn pts(v: &[&str]) -> Vec<DyadicPoint> {
    v.iter().map(|s| p(s)).collect()
}

pub fn dy(m: i64, e: i64) -> Dyadic {
    Dyadic::new(BigInt::from(m), e).unwrap()
}

/// Independent value of a dyadic: mantissa times a power of 2 as an exact rational.
pub fn rat(d: &Dyadic) -> BigRational {
    let m = BigRational::from_integer(d.mantissa().clone());
    let two = BigRational::from_integer(BigInt::from(2));
    let e = d.exponent();
    if e >= 0 {
        m * num_traits::pow(two, e as usize)
    } else {
        m / num_traits::pow(two, (-e) as usize)
    }
}

/// Dyadics `m / 2^k` with `|m| <= mag` and `0 <= k <= max_exp`.
pub fn dyadic(mag: i64, max_exp: i64) -> impl Strategy<Value = Dyadic> {
    (-mag..=mag, 0..=max_exp).prop_map(|(m, k)| dy(m, -k))
}

pub fn point(dim: usize, mag: i64, max_exp: i64) -> impl Strategy<Value = DyadicPoint> {
    proptest::collection::vec(dyadic(mag, max_exp), dim).prop_map(|c| DyadicPoint::new(c).unwrap())
}

pub fn points(dim: usize, n: std::ops::RangeInclusive<usize>, mag: i64, max_exp: i64) -> impl Strategy<Value = Vec<DyadicPoint>> {
    proptest::collection::vec(point(dim, mag, max_exp), n)
}

pub fn rand_dyadic(rng: &mut StdRng, mag: i64, max_exp: i64) -> Dyadic {
    dy(rng.gen_range(-mag..=mag), -rng.gen_range(0..=max_exp))
}

pub fn rand_point(rng: &mut StdRng, dim: usize, mag: i64, max_exp: i64) -> DyadicPoint {
    DyadicPoint::new((0..dim).map(|_| rand_dyadic(rng, mag, max_exp)).collect()).unwrap()
}

/// Generator sets of at most 5 planar points with coordinates `m / 8`, `|m| <= 24`.
pub fn rand_planar_set(rng: &mut StdRng) -> Vec<DyadicPoint> {
    let n = rng.gen_range(1..=5);
    (0..n).map(|_| rand_point(rng, 2, 24, 3)).collect()
}

/// Products of shears, 2-power scalings, sign flips and swaps, plus a translation.
pub fn affine_map(dim: usize) -> impl Strategy<Value = AffineMap> {
    let step = (0..dim, 0..dim, dyadic(6, 2), -2i64..=2, any::<bool>());
    (proptest::collection::vec(step, 1..6), point(dim, 16, 3)).prop_map(move |(steps, t)| {
        let mut m = AffineMap::identity(dim);
        for (i, j, s, k, flip) in steps {
            let mut e: Vec<Vec<Dyadic>> = (0..dim).map(|r| (0..dim).map(|c| if r == c { Dyadic::one() } else { Dyadic::zero() }).collect()).collect();
            if i != j {
                e[i][j] = s;
            } else {
                e[i][i] = dy(if flip { -1 } else { 1 }, k);
            }
            m = m.compose(&AffineMap::linear(e).unwrap()).unwrap();
        }
        m.compose(&AffineMap::translation_by(t)).unwrap()
    })
}
