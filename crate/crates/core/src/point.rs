use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::{odd_part, Dyadic};
use crate::error::{Error, Result};

/// A point of `D^n`, `n >= 1`. Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DyadicPoint {
    coords: Vec<Dyadic>,
}

impl DyadicPoint {
    pub fn new(coords: Vec<Dyadic>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("points need at least one coordinate".into()));
        }
        Ok(DyadicPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DyadicPoint::new(coords.iter().map(|&c| Dyadic::from_int(c)).collect())
            .expect("non-empty coordinate list")
    }

    pub fn origin(dim: usize) -> Self {
        DyadicPoint::new(vec![Dyadic::zero(); dim]).expect("non-empty coordinate list")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Dyadic] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Dyadic> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &Dyadic {
        &self.coords[i]
    }

    /// Largest denominator exponent over the coordinates.
    pub fn denom_exp(&self) -> u64 {
        self.coords.iter().map(Dyadic::denom_exp).max().unwrap_or(0)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicPoint { coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicPoint { coords })
    }

    pub fn scale(&self, s: &Dyadic) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicPoint { coords })
    }

    pub fn mul_pow2(&self, k: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.mul_pow2(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicPoint { coords })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Dyadic::is_zero)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords.iter().map(Dyadic::to_rational).collect()
    }

    pub fn from_rational(v: &[BigRational]) -> Option<Self> {
        let coords = v.iter().map(Dyadic::from_rational).collect::<Option<Vec<_>>>()?;
        DyadicPoint::new(coords).ok()
    }

    /// Coordinates times `2^k` as integers, if all are exact.
    pub fn scaled_ints(&self, k: u64) -> Option<Vec<BigInt>> {
        self.coords.iter().map(|c| c.scaled_int(k)).collect()
    }
}

/// Orders by denominator exponent first, then lexicographically.
pub fn exp_lex_cmp(a: &DyadicPoint, b: &DyadicPoint) -> Ordering {
    a.denom_exp().cmp(&b.denom_exp()).then_with(|| a.cmp(b))
}

/// The binary operation `x o y = (x + y) / 2`.
pub fn midpoint(x: &DyadicPoint, y: &DyadicPoint) -> Result<DyadicPoint> {
    let s = x.add(y)?;
    s.mul_pow2(-1)
}

/// `sum w_i x_i` for dyadic weights summing to 1.
pub fn affine_combination(points: &[DyadicPoint], weights: &[Dyadic]) -> Result<DyadicPoint> {
    let first = points.first().ok_or(Error::Empty)?;
    if points.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} points but {} weights",
            points.len(),
            weights.len()
        )));
    }
    let mut total = Dyadic::zero();
    for w in weights {
        total = total.checked_add(w)?;
    }
    if total != Dyadic::one() {
        return Err(Error::WeightSum);
    }
    let mut acc = DyadicPoint::origin(first.dim());
    for (p, w) in points.iter().zip(weights) {
        acc = acc.add(&p.scale(w)?)?;
    }
    Ok(acc)
}

/// Dyadic points on the unit circle with denominator exponent at most `exp_cap`.
///
/// Scans `x` over the grid of `[-1, 1]` and keeps the `x` for which `1 - x^2`
/// is the square of a dyadic within the cap.
pub fn unit_circle_points(exp_cap: u32) -> Vec<DyadicPoint> {
    let scale = BigInt::one() << exp_cap;
    let mut out = Vec::new();
    let mut a = -scale.clone();
    while a <= scale {
        let x = Dyadic::new(a.clone(), -(exp_cap as i64)).expect("small exponent");
        let y2 = Dyadic::one() - &x * &x;
        for y in dyadic_sqrt(&y2) {
            if y.denom_exp() <= exp_cap as u64 {
                out.push(DyadicPoint::new(vec![x.clone(), y]).expect("two coordinates"));
            }
        }
        a += 1;
    }
    out.sort_by(exp_lex_cmp);
    out.dedup();
    out
}

/// Both square roots of a dyadic, when it is the square of one.
fn dyadic_sqrt(v: &Dyadic) -> Vec<Dyadic> {
    if v.is_zero() {
        return vec![Dyadic::zero()];
    }
    if v.signum() < 0 || v.exponent() % 2 != 0 {
        return Vec::new();
    }
    let m = v.mantissa();
    let r = m.sqrt();
    if &(&r * &r) != m {
        return Vec::new();
    }
    let root = Dyadic::new(r, v.exponent() / 2).expect("halved exponent");
    vec![-root.clone(), root]
}

impl fmt::Display for DyadicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for DyadicPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for DyadicPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Dyadic>>>()?;
        DyadicPoint::new(coords)
    }
}

/// Odd part of every nonzero coordinate difference between two points, combined by gcd.
pub fn odd_gcd_of_difference(a: &DyadicPoint, b: &DyadicPoint) -> Result<BigInt> {
    use num_integer::Integer;
    let d = b.sub(a)?;
    let mut g = BigInt::zero();
    for c in d.coords() {
        if !c.is_zero() {
            let (odd, _) = odd_part(c.mantissa())?;
            g = g.gcd(&odd);
        }
    }
    if g.is_zero() {
        return Err(Error::Degenerate("coincident points".into()));
    }
    Ok(g)
}
