//! Finite generating sets for dyadic polytopes and semipolytopes.
//!
//! The construction recurses on walls: a segment gets its endpoints plus at most
//! one extra point, a higher-dimensional target gets the generators of its maximal
//! walls plus either an inner simplex (polytopes) or, for semipolytopes, the
//! generators of the inner polytope spanned by one anchor per wall.
//! Every result is checked against the target descriptor before it is returned.

mod pick;

pub use pick::{
    anchors, dyadic_between, exp_colex_cmp, inner_polytope, inner_simplex, inner_simplex_in,
    interval_extra_point, interval_type_in, min_exp_dyadic_between, min_exp_relint_point,
    three_point_generates_interval, wall_line_triple, LineTriple,
};

use serde::Serialize;

use crate::classify::{normalize_triangle, TriangleClass};
use crate::error::{Error, Result};
use crate::groupoid::{GeneratorSet, SemipolytopeDescriptor};
use crate::hull::{convex_hull, RationalPolytope};
use crate::lattice::{affine_hull, AffineDyadicSubspace};
use crate::point::DyadicPoint;

/// Search depth used when testing whether a triangle is of right class.
const RIGHT_CHECK_DEPTH: u32 = 8;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum ConstructionStep {
    Vertex {
        point: DyadicPoint,
    },
    Interval {
        endpoints: [DyadicPoint; 2],
        type_k: String,
        extra: Option<DyadicPoint>,
    },
    InnerSimplex {
        face: Vec<DyadicPoint>,
        apex: DyadicPoint,
        points: Vec<DyadicPoint>,
    },
    Anchors {
        face: Vec<DyadicPoint>,
        anchors: Vec<DyadicPoint>,
    },
    RightTriangle {
        face: Vec<DyadicPoint>,
        representative: String,
    },
    Semitriangle {
        face: Vec<DyadicPoint>,
        extra: Vec<DyadicPoint>,
    },
    Reduce {
        removed: Vec<DyadicPoint>,
    },
}

#[derive(Clone, Debug)]
pub struct GenerationCertificate {
    pub target: SemipolytopeDescriptor,
    pub produced: Vec<DyadicPoint>,
    pub log: Vec<ConstructionStep>,
}

impl GenerationCertificate {
    /// Recomputes the groupoid of `produced` and compares it with the target.
    pub fn validate(&self) -> Result<bool> {
        generates(&self.produced, &self.target)
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.produced.clone())
    }

    /// The certificate after [`irredundant_reduce`], with the removals logged.
    pub fn reduced(mut self) -> Result<Self> {
        let before = self.generator_set()?;
        let after = irredundant_reduce(&before)?;
        let removed: Vec<DyadicPoint> = self
            .produced
            .iter()
            .filter(|p| !after.points().contains(p))
            .cloned()
            .collect();
        self.produced = after.points().to_vec();
        self.log.push(ConstructionStep::Reduce { removed });
        Ok(self)
    }
}

/// Whether `points` generate exactly the groupoid described by `target`.
pub fn generates(points: &[DyadicPoint], target: &SemipolytopeDescriptor) -> Result<bool> {
    let g = GeneratorSet::new(points.to_vec())?;
    g.descriptor().same_groupoid(target)
}

/// The descriptor of `poly` as a polytope inside `space`: every face carries the
/// full lattice of `space` restricted to its affine span.
pub fn polytope_descriptor_in(
    space: &AffineDyadicSubspace,
    poly: &RationalPolytope,
) -> Result<SemipolytopeDescriptor> {
    let faces = poly.faces().faces.len();
    let subspaces = (0..faces)
        .map(|f| space.saturate_within(&poly.face_vertices(f)))
        .collect::<Result<Vec<_>>>()?;
    SemipolytopeDescriptor::new(poly.clone(), subspaces)
}

/// The descriptor of `poly` as a dyadic polytope: all face subspaces saturated.
pub fn polytope_descriptor(poly: &RationalPolytope) -> Result<SemipolytopeDescriptor> {
    let space = affine_hull(poly.vertices())?.saturate();
    polytope_descriptor_in(&space, poly)
}

pub fn generating_set_polytope(poly: &RationalPolytope) -> Result<GenerationCertificate> {
    let target = polytope_descriptor(poly)?;
    generating_set_semipolytope(&target)
}

pub fn generating_set_semipolytope(s: &SemipolytopeDescriptor) -> Result<GenerationCertificate> {
    let mut log = Vec::new();
    let produced = generate(s, &mut log)?;
    let cert = GenerationCertificate {
        target: s.clone(),
        produced,
        log,
    };
    if !cert.validate()? {
        return Err(Error::Degenerate(
            "constructed set does not generate the target".into(),
        ));
    }
    Ok(cert)
}

fn extend_unique(out: &mut Vec<DyadicPoint>, pts: impl IntoIterator<Item = DyadicPoint>) {
    for p in pts {
        if !out.contains(&p) {
            out.push(p);
        }
    }
}

/// Whether every face subspace of `s` is the top subspace cut down to that face.
fn is_polytope_in_top(s: &SemipolytopeDescriptor) -> Result<bool> {
    let hull = s.hull();
    let top = s.top_subspace();
    for f in 0..hull.faces().faces.len() {
        let want = top.saturate_within(&hull.face_vertices(f))?;
        if !s.subspace(f).same_as(&want)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn generate(s: &SemipolytopeDescriptor, log: &mut Vec<ConstructionStep>) -> Result<Vec<DyadicPoint>> {
    let hull = s.hull();
    let k = hull.dim();
    if k == 0 {
        let v = hull.vertices()[0].clone();
        log.push(ConstructionStep::Vertex { point: v.clone() });
        return Ok(vec![v]);
    }
    if k == 1 {
        let [a, c] = [hull.vertices()[0].clone(), hull.vertices()[1].clone()];
        let space = s.top_subspace();
        let extra = interval_extra_point(space, &a, &c)?;
        log.push(ConstructionStep::Interval {
            endpoints: [a.clone(), c.clone()],
            type_k: interval_type_in(space, &a, &c)?.to_string(),
            extra: extra.clone(),
        });
        let mut out = vec![a, c];
        out.extend(extra);
        return Ok(out);
    }

    let faces = hull.faces();
    let mut out = Vec::new();
    for f in faces.maximal_subfaces(faces.top()) {
        let wall = generate(&s.restrict(f), log)?;
        extend_unique(&mut out, wall);
    }

    let polytope_like = is_polytope_in_top(s)?;
    let space = s.top_subspace();
    let triangle = k == 2 && hull.vertices().len() == 3;
    if triangle && polytope_like {
        if let Some(rep) = right_representative(s)? {
            if generates(&out, s)? {
                log.push(ConstructionStep::RightTriangle {
                    face: hull.vertices().to_vec(),
                    representative: rep,
                });
                return Ok(out);
            }
        }
    }
    if triangle && !polytope_like {
        if let Some(extra) = semitriangle_extra(s, &out)? {
            log.push(ConstructionStep::Semitriangle {
                face: hull.vertices().to_vec(),
                extra: extra.clone(),
            });
            extend_unique(&mut out, extra);
            return Ok(out);
        }
    }

    if polytope_like {
        let apex = min_exp_relint_point(space, hull)?;
        let simplex = inner_simplex_in(space, hull, &apex)?;
        log.push(ConstructionStep::InnerSimplex {
            face: hull.vertices().to_vec(),
            apex,
            points: simplex.clone(),
        });
        extend_unique(&mut out, simplex);
    } else {
        let ys = anchors(s)?;
        let inner = inner_polytope(s, &ys)?;
        log.push(ConstructionStep::Anchors {
            face: hull.vertices().to_vec(),
            anchors: ys,
        });
        let d = polytope_descriptor_in(space, &inner)?;
        let inner_gens = generate(&d, log)?;
        extend_unique(&mut out, inner_gens);
    }
    Ok(out)
}

/// The normal form of a triangle measured in its own lattice, when of right class.
fn right_representative(s: &SemipolytopeDescriptor) -> Result<Option<String>> {
    let chart = s.top_subspace().chart();
    let v = s
        .hull()
        .vertices()
        .iter()
        .map(|p| chart.forward(p).and_then(DyadicPoint::new))
        .collect::<Result<Vec<_>>>()?;
    match normalize_triangle(&v[0], &v[1], &v[2], RIGHT_CHECK_DEPTH) {
        Ok(n) if n.descriptor.class == TriangleClass::Right => Ok(Some(n.descriptor.to_string())),
        Ok(_) | Err(Error::SearchExhausted(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One or two vertices of an inner right simplex that complete the side generators.
fn semitriangle_extra(
    s: &SemipolytopeDescriptor,
    sides: &[DyadicPoint],
) -> Result<Option<Vec<DyadicPoint>>> {
    let space = s.top_subspace();
    let apex = min_exp_relint_point(space, s.hull())?;
    let simplex = inner_simplex_in(space, s.hull(), &apex)?;
    let mut subsets: Vec<Vec<DyadicPoint>> = simplex.iter().map(|p| vec![p.clone()]).collect();
    for i in 0..simplex.len() {
        for j in i + 1..simplex.len() {
            subsets.push(vec![simplex[i].clone(), simplex[j].clone()]);
        }
    }
    for extra in subsets {
        let mut trial = sides.to_vec();
        extend_unique(&mut trial, extra.clone());
        if generates(&trial, s)? {
            return Ok(Some(extra));
        }
    }
    Ok(None)
}

/// Greedy single pass: points are tried by descending denominator exponent, then
/// lexicographically, and dropped when the rest still generate the same groupoid.
/// Vertices of the hull are never removable.
pub fn irredundant_reduce(x: &GeneratorSet) -> Result<GeneratorSet> {
    let target = x.descriptor().clone();
    let mut order: Vec<DyadicPoint> = x.points().to_vec();
    order.sort_by(|a, b| b.denom_exp().cmp(&a.denom_exp()).then_with(|| a.cmp(b)));
    let mut current: Vec<DyadicPoint> = x.points().to_vec();
    for p in order {
        if x.hull().is_vertex(&p) {
            continue;
        }
        let trial: Vec<DyadicPoint> = current.iter().filter(|q| **q != p).cloned().collect();
        if generates(&trial, &target)? {
            current = trial;
        }
    }
    GeneratorSet::new(current)
}

/// Whether no single element can be removed without changing the groupoid.
pub fn is_irredundant(x: &GeneratorSet) -> Result<bool> {
    for p in x.points() {
        if x.hull().is_vertex(p) {
            continue;
        }
        if generates(x.without(p)?.points(), x.descriptor())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of probing the hat triangle `(-1,0), (0,1), (0,3)` for small generating sets.
#[derive(Clone, Debug, Serialize)]
pub struct VertexProbe {
    pub vertices: Vec<DyadicPoint>,
    /// Whether the three vertices alone generate the triangle.
    pub vertices_generate: bool,
    /// Size of the set "vertices and (0,1)" after removing the duplicate.
    pub sentence_set_size: usize,
    /// Extra points `x` for which `vertices ∪ {x}` is an irredundant generating set.
    pub irredundant_extras: Vec<DyadicPoint>,
    pub candidates_checked: usize,
    pub exp_cap: u32,
}

pub fn hat_vertex_probe(exp_cap: u32) -> Result<VertexProbe> {
    let vertices: Vec<DyadicPoint> = [[-1, 0], [0, 1], [0, 3]]
        .iter()
        .map(|c| DyadicPoint::from_ints(c))
        .collect();
    let hull = convex_hull(&vertices)?;
    let target = polytope_descriptor(&hull)?;
    let vertices_generate = generates(&vertices, &target)?;
    let mut sentence = vertices.clone();
    extend_unique(&mut sentence, [DyadicPoint::from_ints(&[0, 1])]);

    let step = 1i64 << exp_cap;
    let mut irredundant_extras = Vec::new();
    let mut candidates_checked = 0;
    for xi in -step..=0 {
        for yi in 0..=3 * step {
            let x = DyadicPoint::new(vec![
                crate::Dyadic::new(xi.into(), -(exp_cap as i64))?,
                crate::Dyadic::new(yi.into(), -(exp_cap as i64))?,
            ])?;
            if hull.is_vertex(&x) || !hull.contains(&x)? {
                continue;
            }
            candidates_checked += 1;
            let mut set = vertices.clone();
            set.push(x.clone());
            if generates(&set, &target)? && is_irredundant(&GeneratorSet::new(set)?)? {
                irredundant_extras.push(x);
            }
        }
    }
    Ok(VertexProbe {
        vertices,
        vertices_generate,
        sentence_set_size: sentence.len(),
        irredundant_extras,
        candidates_checked,
        exp_cap,
    })
}

#[cfg(test)]
mod tests;
