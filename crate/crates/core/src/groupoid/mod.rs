//! Finitely generated convex subgroupoids of `(D^n, o)`.
//!
//! A point `p` lies in the groupoid generated by `X` exactly when it lies in the real
//! hull of `X` and in the affine D-hull of the generators sitting on the face whose
//! relative interior contains `p`. Everything here is decided from that one fact.

mod closure;
mod descriptor;

pub use closure::{closure_bfs, ClosureOptions, ClosureReport, POINT_LIMIT_ENV};
pub use descriptor::SemipolytopeDescriptor;

use crate::error::{Error, Result};
use crate::hull::{convex_hull, RationalPolytope};
use crate::lattice::affine_hull;
use crate::point::DyadicPoint;

/// A finite, non-empty generating set together with its hull and face data.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    points: Vec<DyadicPoint>,
    descriptor: SemipolytopeDescriptor,
}

impl GeneratorSet {
    /// Duplicates are dropped; order of first occurrence is kept.
    pub fn new(points: Vec<DyadicPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty)?;
        let n = first.dim();
        let mut uniq: Vec<DyadicPoint> = Vec::with_capacity(points.len());
        for p in points {
            p.check_dim(n)?;
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        let hull = convex_hull(&uniq)?;
        let mut subspaces = Vec::with_capacity(hull.faces().faces.len());
        for f in 0..hull.faces().faces.len() {
            let on_face: Vec<DyadicPoint> = uniq
                .iter()
                .filter(|x| hull.face_contains(f, x).expect("same dimension"))
                .cloned()
                .collect();
            subspaces.push(affine_hull(&on_face)?);
        }
        let descriptor = SemipolytopeDescriptor::from_parts_unchecked(hull, subspaces);
        Ok(GeneratorSet {
            points: uniq,
            descriptor,
        })
    }

    pub fn from_strs(points: &[&str]) -> Result<Self> {
        GeneratorSet::new(points.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>()?)
    }

    pub fn points(&self) -> &[DyadicPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn hull(&self) -> &RationalPolytope {
        self.descriptor.hull()
    }

    pub fn descriptor(&self) -> &SemipolytopeDescriptor {
        &self.descriptor
    }

    /// Generators lying on the given face of the hull.
    pub fn on_face(&self, face: usize) -> Vec<DyadicPoint> {
        self.points
            .iter()
            .filter(|x| self.hull().face_contains(face, x).expect("same dimension"))
            .cloned()
            .collect()
    }

    pub fn without(&self, p: &DyadicPoint) -> Result<GeneratorSet> {
        GeneratorSet::new(self.points.iter().filter(|x| *x != p).cloned().collect())
    }

    pub fn contains(&self, p: &DyadicPoint) -> Result<bool> {
        self.descriptor.member(p)
    }
}

pub fn member(p: &DyadicPoint, x: &GeneratorSet) -> Result<bool> {
    x.contains(p)
}

/// Whether `<X>` equals `conv(X)` intersected with `D^n`.
pub fn is_geometric(x: &GeneratorSet) -> bool {
    x.descriptor.is_geometric()
}

pub fn semipolytope_descriptor(x: &GeneratorSet) -> SemipolytopeDescriptor {
    x.descriptor.clone()
}

pub fn vertices_in(x: &GeneratorSet) -> Vec<DyadicPoint> {
    x.hull().vertices().to_vec()
}

pub fn equals_groupoid(x: &GeneratorSet, y: &GeneratorSet) -> Result<bool> {
    x.descriptor.same_groupoid(&y.descriptor)
}
