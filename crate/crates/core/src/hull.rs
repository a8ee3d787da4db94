//! Exact convex hulls of finite dyadic point sets.
//!
//! Supporting hyperplanes are found by brute force over subsets of the input, which
//! is plenty for the small sets this crate works with and has no degenerate cases.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::linalg::{int_to_q, nullspace, primitive_integer, rank};
use crate::point::DyadicPoint;

/// `normal . x >= offset`, with `normal` primitive and lying in the direction space of the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Dyadic,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Sorted indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Facets containing this face; empty for the whole polytope.
    pub facets: Vec<usize>,
}

/// Faces graded by dimension; the last face is the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.dim == d)
            .map(|(i, _)| i)
    }

    /// Faces of dimension one less contained in face `i`.
    pub fn maximal_subfaces(&self, i: usize) -> Vec<usize> {
        let f = &self.faces[i];
        if f.dim == 0 {
            return Vec::new();
        }
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, g)| g.dim + 1 == f.dim && is_subset(&g.vertices, &f.vertices))
            .map(|(j, _)| j)
            .collect()
    }

    /// Whether face `a` is contained in face `b`.
    pub fn incident(&self, a: usize, b: usize) -> bool {
        is_subset(&self.faces[a].vertices, &self.faces[b].vertices)
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.vertices == vertices)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<DyadicPoint>,
    facets: Vec<Facet>,
    /// `normal . x = offset` cutting out the affine span.
    equalities: Vec<(Vec<BigInt>, Dyadic)>,
    faces: FaceLattice,
}

pub(crate) fn int_dot(a: &[BigInt], x: &DyadicPoint) -> Dyadic {
    a.iter()
        .zip(x.coords())
        .fold(Dyadic::zero(), |acc, (ai, xi)| acc + &Dyadic::from_int(ai.clone()) * xi)
}

fn int_dot_q(a: &[BigInt], x: &[BigRational]) -> BigRational {
    a.iter()
        .zip(x)
        .fold(BigRational::from_integer(0.into()), |acc, (ai, xi)| {
            acc + BigRational::from_integer(ai.clone()) * xi
        })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Rank of the differences `p - points[0]` over `Q`.
pub fn affine_rank(points: &[DyadicPoint]) -> usize {
    let Some(base) = points.first() else { return 0 };
    let n = base.dim();
    let rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| p.sub(base).expect("same dimension").to_rational())
        .collect();
    rank(&rows, n)
}

pub fn convex_hull(points: &[DyadicPoint]) -> Result<RationalPolytope> {
    let first = points.first().ok_or(Error::Empty)?;
    let n = first.dim();
    for p in points {
        p.check_dim(n)?;
    }
    let mut pts: Vec<DyadicPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let base = pts[0].clone();
    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| p.sub(&base).map(|d| d.to_rational()))
        .collect::<Result<_>>()?;
    let r = rank(&diffs, n);
    let equalities: Vec<(Vec<BigInt>, Dyadic)> = nullspace(&diffs, n)
        .iter()
        .map(|v| {
            let c = primitive_integer(v);
            let off = int_dot(&c, &base);
            (c, off)
        })
        .collect();

    let mut facet_map: BTreeMap<(Vec<BigInt>, Dyadic), ()> = BTreeMap::new();
    if r > 0 {
        let eq_rows: Vec<Vec<BigRational>> = equalities.iter().map(|(c, _)| int_to_q(&c.clone())).collect();
        let values_cache: Vec<Vec<BigRational>> = pts.iter().map(DyadicPoint::to_rational).collect();
        for subset in combinations(pts.len(), r) {
            let s0 = &values_cache[subset[0]];
            let mut rows = eq_rows.clone();
            for &i in &subset[1..] {
                rows.push(values_cache[i].iter().zip(s0).map(|(a, b)| a - b).collect());
            }
            let ns = nullspace(&rows, n);
            if ns.len() != 1 {
                continue;
            }
            let a = primitive_integer(&ns[0]);
            let off = int_dot_q(&a, s0);
            let mut above = false;
            let mut below = false;
            for v in &values_cache {
                let x = int_dot_q(&a, v);
                if x > off {
                    above = true;
                } else if x < off {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            if above && below {
                continue;
            }
            let (a, off) = if below {
                (a.iter().map(|x| -x).collect::<Vec<_>>(), -off)
            } else {
                (a, off)
            };
            let off = Dyadic::from_rational(&off).expect("integer normal at a dyadic point");
            facet_map.insert((a, off), ());
        }
    }
    let raw_facets: Vec<(Vec<BigInt>, Dyadic)> = facet_map.into_keys().collect();

    let tight: Vec<Vec<bool>> = pts
        .iter()
        .map(|p| raw_facets.iter().map(|(a, o)| &int_dot(a, p) == o).collect())
        .collect();
    let vertices: Vec<DyadicPoint> = if r == 0 {
        vec![base.clone()]
    } else {
        pts.iter()
            .zip(&tight)
            .filter(|(_, t)| {
                let rows: Vec<Vec<BigRational>> = raw_facets
                    .iter()
                    .zip(t.iter())
                    .filter(|(_, &on)| on)
                    .map(|((a, _), _)| int_to_q(a))
                    .collect();
                rank(&rows, n) == r
            })
            .map(|(p, _)| p.clone())
            .collect()
    };
    let facets: Vec<Facet> = raw_facets
        .into_iter()
        .map(|(normal, offset)| {
            let vs = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| int_dot(&normal, v) == offset)
                .map(|(i, _)| i)
                .collect();
            Facet {
                normal,
                offset,
                vertices: vs,
            }
        })
        .collect();
    let faces = build_faces(&vertices, &facets);
    Ok(RationalPolytope {
        ambient_dim: n,
        dim: r,
        vertices,
        facets,
        equalities,
        faces,
    })
}

fn build_faces(vertices: &[DyadicPoint], facets: &[Facet]) -> FaceLattice {
    let all: Vec<usize> = (0..vertices.len()).collect();
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut added = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let c: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                if !c.is_empty() && sets.insert(c) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    sets.remove(&all);
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let pts: Vec<DyadicPoint> = vs.iter().map(|&i| vertices[i].clone()).collect();
            let fs = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| is_subset(&vs, &f.vertices))
                .map(|(i, _)| i)
                .collect();
            Face {
                dim: affine_rank(&pts),
                vertices: vs,
                facets: fs,
            }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
    faces.push(Face {
        dim: affine_rank(vertices),
        vertices: all,
        facets: Vec::new(),
    });
    FaceLattice { faces }
}

impl RationalPolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[DyadicPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equalities(&self) -> &[(Vec<BigInt>, Dyadic)] {
        &self.equalities
    }

    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn face_vertices(&self, face: usize) -> Vec<DyadicPoint> {
        self.faces.faces[face]
            .vertices
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    pub fn face_polytope(&self, face: usize) -> RationalPolytope {
        convex_hull(&self.face_vertices(face)).expect("faces are non-empty")
    }

    fn in_span(&self, p: &DyadicPoint) -> bool {
        self.equalities.iter().all(|(c, o)| &int_dot(c, p) == o)
    }

    pub fn contains(&self, p: &DyadicPoint) -> Result<bool> {
        p.check_dim(self.ambient_dim)?;
        Ok(self.in_span(p) && self.facets.iter().all(|f| int_dot(&f.normal, p) >= f.offset))
    }

    pub fn contains_q(&self, p: &[BigRational]) -> bool {
        self.equalities
            .iter()
            .all(|(c, o)| int_dot_q(c, p) == o.to_rational())
            && self
                .facets
                .iter()
                .all(|f| int_dot_q(&f.normal, p) >= f.offset.to_rational())
    }

    pub fn relint_contains(&self, p: &DyadicPoint) -> Result<bool> {
        p.check_dim(self.ambient_dim)?;
        if self.dim == 0 {
            return Ok(p == &self.vertices[0]);
        }
        Ok(self.in_span(p) && self.facets.iter().all(|f| int_dot(&f.normal, p) > f.offset))
    }

    pub fn relint_contains_q(&self, p: &[BigRational]) -> bool {
        if self.dim == 0 {
            return self.vertices[0].to_rational() == p;
        }
        self.equalities
            .iter()
            .all(|(c, o)| int_dot_q(c, p) == o.to_rational())
            && self
                .facets
                .iter()
                .all(|f| int_dot_q(&f.normal, p) > f.offset.to_rational())
    }

    /// Index of the face whose relative interior contains `p`.
    pub fn minimal_face(&self, p: &DyadicPoint) -> Result<usize> {
        if !self.contains(p)? {
            return Err(Error::InvalidArgument(format!("{p} is outside the polytope")));
        }
        let tight: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| int_dot(&f.normal, p) == f.offset)
            .map(|(i, _)| i)
            .collect();
        if tight.is_empty() {
            return Ok(self.faces.top());
        }
        let mut vs = self.facets[tight[0]].vertices.clone();
        for &t in &tight[1..] {
            vs.retain(|x| self.facets[t].vertices.binary_search(x).is_ok());
        }
        Ok(self.faces.find(&vs).expect("intersections of facets are faces"))
    }

    /// Whether `p` lies in the (closed) face.
    pub fn face_contains(&self, face: usize, p: &DyadicPoint) -> Result<bool> {
        if !self.contains(p)? {
            return Ok(false);
        }
        Ok(self.faces.faces[face]
            .facets
            .iter()
            .all(|&i| int_dot(&self.facets[i].normal, p) == self.facets[i].offset))
    }

    pub fn is_vertex(&self, p: &DyadicPoint) -> bool {
        self.vertices.binary_search(p).is_ok()
    }
}

pub fn face_lattice(p: &RationalPolytope) -> &FaceLattice {
    p.faces()
}

pub fn minimal_face(p: &RationalPolytope, x: &DyadicPoint) -> Result<usize> {
    p.minimal_face(x)
}

pub fn relint_contains(p: &RationalPolytope, x: &DyadicPoint) -> Result<bool> {
    p.relint_contains(x)
}
