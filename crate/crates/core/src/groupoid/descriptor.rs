use crate::error::{Error, Result};
use crate::hull::RationalPolytope;
use crate::lattice::AffineDyadicSubspace;
use crate::point::DyadicPoint;

/// A convex subgroupoid given by its real hull and, for every face, the affine
/// D-subspace that cuts it out on the relative interior of that face.
#[derive(Clone, Debug)]
pub struct SemipolytopeDescriptor {
    hull: RationalPolytope,
    subspaces: Vec<AffineDyadicSubspace>,
}

impl SemipolytopeDescriptor {
    pub(crate) fn from_parts_unchecked(
        hull: RationalPolytope,
        subspaces: Vec<AffineDyadicSubspace>,
    ) -> Self {
        SemipolytopeDescriptor { hull, subspaces }
    }

    /// Checks that each subspace spans its face and that subspaces nest along the face lattice.
    pub fn new(hull: RationalPolytope, subspaces: Vec<AffineDyadicSubspace>) -> Result<Self> {
        let faces = &hull.faces().faces;
        if subspaces.len() != faces.len() {
            return Err(Error::InvalidArgument(format!(
                "{} faces but {} subspaces",
                faces.len(),
                subspaces.len()
            )));
        }
        for (i, (f, a)) in faces.iter().zip(&subspaces).enumerate() {
            if a.dim() != f.dim {
                return Err(Error::InvalidArgument(format!(
                    "face {i} has dimension {} but its subspace has rank {}",
                    f.dim,
                    a.dim()
                )));
            }
            for v in hull.face_vertices(i) {
                if !a.contains(&v)? {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} of face {i} is not in its subspace"
                    )));
                }
            }
        }
        for (i, g) in subspaces.iter().enumerate() {
            for (j, a) in subspaces.iter().enumerate() {
                if i != j && hull.faces().incident(i, j) {
                    let nested = a.contains(g.base())? && g.lattice().is_sublattice_of(a.lattice())?;
                    if !nested {
                        return Err(Error::InvalidArgument(format!(
                            "subspace of face {i} is not contained in that of face {j}"
                        )));
                    }
                }
            }
        }
        Ok(SemipolytopeDescriptor { hull, subspaces })
    }

    pub fn hull(&self) -> &RationalPolytope {
        &self.hull
    }

    pub fn subspaces(&self) -> &[AffineDyadicSubspace] {
        &self.subspaces
    }

    pub fn subspace(&self, face: usize) -> &AffineDyadicSubspace {
        &self.subspaces[face]
    }

    pub fn top_subspace(&self) -> &AffineDyadicSubspace {
        &self.subspaces[self.hull.faces().top()]
    }

    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn member(&self, p: &DyadicPoint) -> Result<bool> {
        if !self.hull.contains(p)? {
            return Ok(false);
        }
        let f = self.hull.minimal_face(p)?;
        self.subspaces[f].contains(p)
    }

    pub fn is_geometric(&self) -> bool {
        self.subspaces.iter().all(AffineDyadicSubspace::is_saturated)
    }

    /// Faces whose subspace is not saturated.
    pub fn obstructed_faces(&self) -> Vec<usize> {
        (0..self.subspaces.len())
            .filter(|&i| !self.subspaces[i].is_saturated())
            .collect()
    }

    pub fn same_groupoid(&self, other: &SemipolytopeDescriptor) -> Result<bool> {
        if self.hull.vertices() != other.hull.vertices() {
            return Ok(false);
        }
        for (a, b) in self.subspaces.iter().zip(&other.subspaces) {
            if !a.same_as(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The descriptor of the wall cut out by `face`.
    pub fn restrict(&self, face: usize) -> SemipolytopeDescriptor {
        let sub = self.hull.face_polytope(face);
        let subspaces = (0..sub.faces().faces.len())
            .map(|g| {
                let mut idx: Vec<usize> = sub
                    .face_vertices(g)
                    .iter()
                    .map(|v| {
                        self.hull
                            .vertices()
                            .binary_search(v)
                            .expect("face vertices are vertices")
                    })
                    .collect();
                idx.sort_unstable();
                let parent = self.hull.faces().find(&idx).expect("faces of faces are faces");
                self.subspaces[parent].clone()
            })
            .collect();
        SemipolytopeDescriptor {
            hull: sub,
            subspaces,
        }
    }
}
