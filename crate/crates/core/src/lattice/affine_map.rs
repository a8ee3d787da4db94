use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::dyadic::{odd_part, Dyadic};
use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, QMatrix};
use crate::point::DyadicPoint;

/// Affine automorphism of `D^n` acting on row vectors: `p -> p * matrix + translation`.
///
/// The determinant is always `+-2^k`, which is exactly the invertibility condition over `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<Vec<Dyadic>>,
    translation: DyadicPoint,
    det: Dyadic,
}

fn to_q(m: &[Vec<Dyadic>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(Dyadic::to_rational).collect()).collect()
}

fn from_q(m: &[Vec<BigRational>]) -> Option<Vec<Vec<Dyadic>>> {
    m.iter()
        .map(|r| r.iter().map(Dyadic::from_rational).collect())
        .collect()
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Dyadic>>, translation: DyadicPoint) -> Result<Self> {
        let n = translation.dim();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        let det_q = determinant(&to_q(&matrix));
        let det = Dyadic::from_rational(&det_q)
            .ok_or_else(|| Error::Singular("determinant is not dyadic".into()))?;
        if det.is_zero() {
            return Err(Error::Singular("determinant is zero".into()));
        }
        let (odd, _) = odd_part(det.mantissa())?;
        if !odd.abs().is_one() {
            return Err(Error::Singular(format!("determinant {det} is not +-2^k")));
        }
        Ok(AffineMap {
            matrix,
            translation,
            det,
        })
    }

    pub fn linear(matrix: Vec<Vec<Dyadic>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        AffineMap::new(matrix, DyadicPoint::origin(n))
    }

    /// Parses rows of dyadic literals, e.g. `[["-1/2","3/2"],["1/2","-1/2"]]`.
    pub fn linear_from_strs(rows: &[&[&str]]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<Dyadic>>>())
            .collect::<Result<Vec<_>>>()?;
        AffineMap::linear(m)
    }

    pub fn translation_by(t: DyadicPoint) -> Self {
        let n = t.dim();
        AffineMap::new(identity(n), t).expect("identity is invertible")
    }

    pub fn identity(n: usize) -> Self {
        AffineMap::translation_by(DyadicPoint::origin(n))
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn matrix(&self) -> &[Vec<Dyadic>] {
        &self.matrix
    }

    pub fn translation(&self) -> &DyadicPoint {
        &self.translation
    }

    pub fn det(&self) -> &Dyadic {
        &self.det
    }

    /// Sign of the determinant and the exponent `k` in `+-2^k`.
    pub fn det_sign_and_exp(&self) -> (i32, i64) {
        (self.det.signum(), self.det.exponent())
    }

    pub fn is_linear(&self) -> bool {
        self.translation.is_zero()
    }

    pub fn apply(&self, p: &DyadicPoint) -> Result<DyadicPoint> {
        p.check_dim(self.dim())?;
        let n = self.dim();
        let coords = (0..n)
            .map(|j| {
                p.coords()
                    .iter()
                    .zip(&self.matrix)
                    .try_fold(self.translation.coord(j).clone(), |acc, (x, row)| {
                        acc.checked_add(&x.checked_mul(&row[j])?)
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        DyadicPoint::new(coords)
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &AffineMap) -> Result<AffineMap> {
        if self.dim() != then.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: then.dim(),
            });
        }
        let n = self.dim();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Dyadic::zero(), |acc, k| {
                            acc + &self.matrix[i][k] * &then.matrix[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        let translation = then.apply(&self.translation)?;
        AffineMap::new(matrix, translation)
    }

    pub fn invert(&self) -> Result<AffineMap> {
        let inv_q = inverse(&to_q(&self.matrix))
            .ok_or_else(|| Error::Singular("matrix is singular".into()))?;
        let inv = from_q(&inv_q).ok_or_else(|| Error::Singular("inverse is not dyadic".into()))?;
        let lin = AffineMap::linear(inv)?;
        let t = lin.apply(&self.translation)?;
        let neg = DyadicPoint::new(t.coords().iter().map(|c| -c).collect())?;
        AffineMap::new(lin.matrix, neg)
    }

    pub fn matrix_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

fn identity(n: usize) -> Vec<Vec<Dyadic>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Dyadic::from_int(BigInt::from(i64::from(i == j))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyadicPoint {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_units() {
        assert!(AffineMap::linear_from_strs(&[&["3", "0"], &["0", "1"]]).is_err());
        assert!(AffineMap::linear_from_strs(&[&["1", "2"], &["2", "4"]]).is_err());
        let m = AffineMap::linear_from_strs(&[&["1", "1"], &["0", "-2"]]).unwrap();
        assert_eq!(m.det_sign_and_exp(), (-1, 1));
    }

    #[test]
    fn apply_compose_invert() {
        let m = AffineMap::linear_from_strs(&[&["-1/2", "3/2"], &["1/2", "-1/2"]]).unwrap();
        let t = AffineMap::translation_by(p("-1,-1"));
        let f = t.compose(&m).unwrap();
        for s in ["0,0", "1,3", "3,0", "5/8,-7"] {
            let x = p(s);
            let via = m.apply(&t.apply(&x).unwrap()).unwrap();
            assert_eq!(f.apply(&x).unwrap(), via);
            let back = f.invert().unwrap().apply(&via).unwrap();
            assert_eq!(back, x);
        }
        let id = f.compose(&f.invert().unwrap()).unwrap();
        assert_eq!(id, AffineMap::identity(2));
    }
}
