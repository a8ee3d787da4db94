//! D-submodules of `D^n` and their affine translates.
//!
//! Generators are scaled to integers first; since 2 is a unit in `D` only the odd
//! parts of the Smith invariants survive, and they are the whole obstruction to
//! saturation.

mod affine_map;
pub mod snf;

pub use affine_map::AffineMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::{odd_part, Dyadic};
use crate::error::{Error, Result};
use crate::point::DyadicPoint;
use snf::{smith_normal_form, IMatrix};

#[derive(Clone, Debug)]
pub struct DyadicLattice {
    ambient_dim: usize,
    /// `invariants[i] * saturated[i]`; a D-basis of the lattice.
    basis: IMatrix,
    /// Odd parts of the nonzero Smith invariants, in divisibility order.
    invariants: Vec<BigInt>,
    /// Power of 2 used to clear the denominators of the input generators.
    scale_exp: u64,
    /// Unimodular column transform: coordinates of `v` are `v * transform`.
    transform: IMatrix,
    /// Rows of the inverse transform; the first `rank` span the saturation.
    saturated: IMatrix,
}

impl DyadicLattice {
    /// The D-span of `generators` inside `D^ambient_dim`.
    pub fn span(ambient_dim: usize, generators: &[DyadicPoint]) -> Result<Self> {
        for g in generators {
            g.check_dim(ambient_dim)?;
        }
        let scale_exp = generators.iter().map(DyadicPoint::denom_exp).max().unwrap_or(0);
        let rows: IMatrix = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.scaled_ints(scale_exp).expect("scaled by the largest denominator"))
            .collect();
        let s = smith_normal_form(&rows, ambient_dim);
        let invariants: Vec<BigInt> = s
            .invariants
            .iter()
            .map(|x| odd_part(x).expect("nonzero invariant").0)
            .collect();
        let r = invariants.len();
        let mut saturated: IMatrix = s.v_inv;
        let mut transform = s.v;
        size_reduce(&mut saturated, &mut transform, &invariants);
        let basis = (0..r)
            .map(|i| saturated[i].iter().map(|x| x * &invariants[i]).collect())
            .collect();
        Ok(DyadicLattice {
            ambient_dim,
            basis,
            invariants,
            scale_exp,
            transform,
            saturated,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        DyadicLattice::span(ambient_dim, &[]).expect("empty span")
    }

    pub fn full(ambient_dim: usize) -> Self {
        let gens: Vec<DyadicPoint> = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                DyadicPoint::from_ints(&v)
            })
            .collect();
        DyadicLattice::span(ambient_dim, &gens).expect("standard basis")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn scale_exp(&self) -> u64 {
        self.scale_exp
    }

    /// Integer basis vectors of the saturation.
    pub fn saturated_basis(&self) -> &[Vec<BigInt>] {
        &self.saturated[..self.rank()]
    }

    pub fn basis_points(&self) -> Vec<DyadicPoint> {
        self.basis.iter().map(|b| int_point(b)).collect()
    }

    pub fn is_saturated(&self) -> bool {
        self.invariants.iter().all(One::is_one)
    }

    fn coordinates(&self, v: &[Dyadic]) -> Vec<Dyadic> {
        (0..self.ambient_dim)
            .map(|j| {
                v.iter().zip(&self.transform).fold(Dyadic::zero(), |acc, (x, row)| {
                    acc + x * &Dyadic::from_int(row[j].clone())
                })
            })
            .collect()
    }

    fn coordinates_q(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.ambient_dim)
            .map(|j| {
                v.iter().zip(&self.transform).fold(BigRational::zero(), |acc, (x, row)| {
                    acc + x * BigRational::from_integer(row[j].clone())
                })
            })
            .collect()
    }

    pub fn contains(&self, v: &DyadicPoint) -> Result<bool> {
        v.check_dim(self.ambient_dim)?;
        let c = self.coordinates(v.coords());
        let r = self.rank();
        Ok(c[r..].iter().all(Dyadic::is_zero)
            && c[..r]
                .iter()
                .zip(&self.invariants)
                .all(|(x, o)| x.divisible_by_odd(o)))
    }

    /// True when `v` lies in the rational span.
    pub fn spans_q(&self, v: &[BigRational]) -> bool {
        let c = self.coordinates_q(v);
        c[self.rank()..].iter().all(Zero::is_zero)
    }

    pub fn saturate(&self) -> DyadicLattice {
        // the unimodular pair already splits off the saturation; no second Smith form needed
        let r = self.rank();
        let invariants = vec![BigInt::one(); r];
        let mut saturated = self.saturated.clone();
        let mut transform = self.transform.clone();
        size_reduce(&mut saturated, &mut transform, &invariants);
        DyadicLattice {
            ambient_dim: self.ambient_dim,
            basis: saturated[..r].to_vec(),
            invariants,
            scale_exp: 0,
            transform,
            saturated,
        }
    }

    pub fn is_sublattice_of(&self, other: &DyadicLattice) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        for b in self.basis_points() {
            if !other.contains(&b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &DyadicLattice) -> Result<bool> {
        Ok(self.rank() == other.rank()
            && self.is_sublattice_of(other)?
            && other.is_sublattice_of(self)?)
    }
}

pub(crate) fn int_point(v: &[BigInt]) -> DyadicPoint {
    DyadicPoint::new(v.iter().map(|x| Dyadic::from_int(x.clone())).collect())
        .expect("non-empty vector")
}

pub fn lattice_member(v: &DyadicPoint, l: &DyadicLattice) -> Result<bool> {
    l.contains(v)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Shrinks the rows of `rows` (with `inv` its inverse) by pairwise reduction.
///
/// Row `i` may absorb multiples of row `j` only when the lattice
/// `sum odd_i * Z rows[i]` and the span of the first `r` rows stay put: complement
/// rows take anything, a basis row takes earlier basis rows freely and later ones
/// in multiples of `odd_j / odd_i`. The inverse gets the matching column updates.
fn size_reduce(rows: &mut IMatrix, inv: &mut IMatrix, odd: &[BigInt]) {
    let n = rows.len();
    let r = odd.len();
    for _ in 0..64 {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || (i < r && j >= r) {
                    continue;
                }
                let step = if i < r && j > i { &odd[j] / &odd[i] } else { BigInt::one() };
                let nj = dot(&rows[j], &rows[j]) * &step;
                if nj.is_zero() {
                    continue;
                }
                // nearest multiple of `step`
                let num = dot(&rows[i], &rows[j]);
                let two = BigInt::from(2);
                let c = (&two * &num + &nj).div_floor(&(&two * &nj)) * &step;
                if c.is_zero() {
                    continue;
                }
                let new: Vec<BigInt> = rows[i].iter().zip(&rows[j]).map(|(x, y)| x - &c * y).collect();
                if dot(&new, &new) >= dot(&rows[i], &rows[i]) {
                    continue;
                }
                rows[i] = new;
                for row in inv.iter_mut() {
                    let t = &row[i] * &c;
                    row[j] += t;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

pub fn saturate(l: &DyadicLattice) -> DyadicLattice {
    l.saturate()
}

/// `base + lattice`.
#[derive(Clone, Debug)]
pub struct AffineDyadicSubspace {
    base: DyadicPoint,
    lattice: DyadicLattice,
}

impl AffineDyadicSubspace {
    pub fn new(base: DyadicPoint, lattice: DyadicLattice) -> Result<Self> {
        base.check_dim(lattice.ambient_dim())?;
        Ok(AffineDyadicSubspace { base, lattice })
    }

    pub fn base(&self) -> &DyadicPoint {
        &self.base
    }

    pub fn lattice(&self) -> &DyadicLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.ambient_dim()
    }

    pub fn contains(&self, p: &DyadicPoint) -> Result<bool> {
        self.lattice.contains(&p.sub(&self.base)?)
    }

    pub fn saturate(&self) -> AffineDyadicSubspace {
        AffineDyadicSubspace {
            base: self.base.clone(),
            lattice: self.lattice.saturate(),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.lattice.is_saturated()
    }

    pub fn same_as(&self, other: &AffineDyadicSubspace) -> Result<bool> {
        Ok(self.lattice.same_as(&other.lattice)? && self.contains(&other.base)?)
    }

    pub fn chart(&self) -> SubspaceChart {
        SubspaceChart { space: self.clone() }
    }

    /// `self` cut down to the real affine span of `points`, which must lie in `self`.
    ///
    /// This is the affine D-hull of a wall of a polytope living in `self`; it is
    /// saturated relative to `self`, not to `D^n`.
    pub fn saturate_within(&self, points: &[DyadicPoint]) -> Result<AffineDyadicSubspace> {
        let base = points.first().ok_or(Error::Empty)?;
        if self.dim() == 0 {
            if !self.contains(base)? {
                return Err(Error::NotInSubspace);
            }
            return Ok(self.clone());
        }
        let chart = self.chart();
        let u0 = DyadicPoint::new(chart.forward(base)?)?;
        let mut diffs = Vec::with_capacity(points.len());
        for p in points {
            diffs.push(DyadicPoint::new(chart.forward(p)?)?.sub(&u0)?);
        }
        let sat = DyadicLattice::span(self.dim(), &diffs)?.saturate();
        let mut vectors = Vec::with_capacity(sat.rank());
        for w in sat.basis_points() {
            let q = chart.backward(u0.add(&w)?.coords())?;
            vectors.push(q.sub(base)?);
        }
        let lattice = DyadicLattice::span(self.ambient_dim(), &vectors)?;
        AffineDyadicSubspace::new(base.clone(), lattice)
    }
}

/// Smallest affine D-subspace containing `points`, based at the first point.
pub fn affine_hull(points: &[DyadicPoint]) -> Result<AffineDyadicSubspace> {
    let base = points.first().ok_or(Error::Empty)?.clone();
    let diffs = points[1..]
        .iter()
        .map(|p| p.sub(&base))
        .collect::<Result<Vec<_>>>()?;
    let lattice = DyadicLattice::span(base.dim(), &diffs)?;
    AffineDyadicSubspace::new(base, lattice)
}

pub fn subspace_equal(a: &AffineDyadicSubspace, b: &AffineDyadicSubspace) -> Result<bool> {
    a.same_as(b)
}

/// Affine bijection between a subspace `A` of rank `k` and `D^k`.
///
/// The forward direction divides by the odd invariants, so it is only affine
/// over `Q`; restricted to `A` it lands in `D^k` exactly.
#[derive(Clone, Debug)]
pub struct SubspaceChart {
    space: AffineDyadicSubspace,
}

impl SubspaceChart {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &AffineDyadicSubspace {
        &self.space
    }

    pub fn forward(&self, p: &DyadicPoint) -> Result<Vec<Dyadic>> {
        let l = &self.space.lattice;
        let c = l.coordinates(p.sub(&self.space.base)?.coords());
        let r = l.rank();
        if !c[r..].iter().all(Dyadic::is_zero) {
            return Err(Error::NotInSubspace);
        }
        c[..r]
            .iter()
            .zip(&l.invariants)
            .map(|(x, o)| x.div_odd(o).ok_or(Error::NotInSubspace))
            .collect()
    }

    /// Forward map on rational points of the rational span.
    pub fn forward_q(&self, p: &[BigRational]) -> Result<Vec<BigRational>> {
        let l = &self.space.lattice;
        let d: Vec<BigRational> = p
            .iter()
            .zip(self.space.base.coords())
            .map(|(x, b)| x - b.to_rational())
            .collect();
        let c = l.coordinates_q(&d);
        let r = l.rank();
        if !c[r..].iter().all(Zero::is_zero) {
            return Err(Error::NotInSubspace);
        }
        Ok(c[..r]
            .iter()
            .zip(&l.invariants)
            .map(|(x, o)| x / BigRational::from_integer(o.clone()))
            .collect())
    }

    pub fn backward(&self, u: &[Dyadic]) -> Result<DyadicPoint> {
        let l = &self.space.lattice;
        if u.len() != l.rank() {
            return Err(Error::DimensionMismatch {
                expected: l.rank(),
                found: u.len(),
            });
        }
        let mut acc = self.space.base.clone();
        for (x, b) in u.iter().zip(l.basis_points()) {
            acc = acc.add(&b.scale(x)?)?;
        }
        Ok(acc)
    }

    pub fn backward_q(&self, u: &[BigRational]) -> Vec<BigRational> {
        let l = &self.space.lattice;
        let mut acc = self.space.base.to_rational();
        for (x, b) in u.iter().zip(&l.basis) {
            for (a, bi) in acc.iter_mut().zip(b) {
                *a += x * BigRational::from_integer(bi.clone());
            }
        }
        acc
    }
}

/// Chart of `A` onto `D^k`; the rank-0 case maps to `D^0`.
pub fn rescale_iso(a: &AffineDyadicSubspace) -> SubspaceChart {
    a.chart()
}
