//! Regression bundles for the worked examples, run by `dyconvex verify`.

use std::fmt::Display;

use serde::Serialize;

use crate::classify::{
    classify_representative, normalize_all_pointings, normalize_triangle, TriangleClass,
    TriangleDescriptor, DEFAULT_SEARCH_DEPTH,
};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::generators::{
    generates, generating_set_polytope, generating_set_semipolytope, hat_vertex_probe, is_irredundant,
    polytope_descriptor,
};
use crate::groupoid::{member, vertices_in, GeneratorSet, SemipolytopeDescriptor};
use crate::hull::convex_hull;
use crate::lattice::{affine_hull, AffineDyadicSubspace, AffineMap, DyadicLattice};
use crate::point::{unit_circle_points, DyadicPoint};

pub const EXAMPLES: &[&str] = &[
    "notdpol",
    "qpol",
    "right333",
    "hat31560",
    "polygon-example",
    "disc",
    "matrices",
    "normalization-pointings",
    "hat-vertex-probe",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub example: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Bundle {
    checks: Vec<Check>,
}

impl Bundle {
    fn eq<T: PartialEq + Display>(&mut self, name: &str, expected: T, actual: T) {
        self.checks.push(Check {
            name: name.into(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn holds(&mut self, name: &str, actual: bool) {
        self.eq(name, true, actual);
    }

    fn finish(self, example: &str) -> VerifyReport {
        VerifyReport {
            example: example.into(),
            passed: self.checks.iter().all(|c| c.pass),
            checks: self.checks,
        }
    }
}

fn p(s: &str) -> DyadicPoint {
    s.parse().expect("literal point")
}

fn pts(v: &[&str]) -> Vec<DyadicPoint> {
    v.iter().map(|s| p(s)).collect()
}

fn show(v: &[DyadicPoint]) -> String {
    let mut v = v.to_vec();
    v.sort();
    let inner: Vec<String> = v.iter().map(|x| format!("({x})")).collect();
    format!("{{{}}}", inner.join(" "))
}

pub const NOTDPOL: [&str; 4] = ["0,0", "1,3", "3,0", "1,1"];
pub const QPOL: [&str; 5] = ["0,0", "0,1", "9,0", "3,0", "1,1/2"];
pub const RIGHT333: [&str; 6] = ["0,0", "3,0", "0,3", "0,1", "1,0", "2,1"];
pub const HAT31560: [&str; 7] = ["0,0", "3,15", "6,0", "1,5", "5,5", "1,0", "1,1"];
pub const POLYGON_EXAMPLE: [&str; 4] = ["0,0", "3,0", "0,1", "1,0"];

/// The qpol semipolytope built by hand: the triangle `(0,0), (9,0), (0,1)` whose
/// bottom edge carries the points `(3d, 0)`, every other face saturated.
pub fn qpol_reference() -> Result<SemipolytopeDescriptor> {
    let hull = convex_hull(&pts(&["0,0", "9,0", "0,1"]))?;
    let bottom = {
        let mut idx: Vec<usize> = ["0,0", "9,0"]
            .iter()
            .map(|s| hull.vertices().binary_search(&p(s)).expect("vertex"))
            .collect();
        idx.sort_unstable();
        hull.faces().find(&idx).expect("bottom edge")
    };
    let subspaces = (0..hull.faces().faces.len())
        .map(|f| {
            if f == bottom {
                let step = DyadicLattice::span(2, &[p("3,0")])?;
                AffineDyadicSubspace::new(p("0,0"), step)
            } else {
                Ok(affine_hull(&hull.face_vertices(f))?.saturate())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SemipolytopeDescriptor::new(hull, subspaces)
}

fn generation_checks(b: &mut Bundle, set: &[&str]) -> Result<GeneratorSet> {
    let x = GeneratorSet::new(pts(set))?;
    let target = polytope_descriptor(x.hull())?;
    b.holds("generates the dyadic polytope on its hull", generates(x.points(), &target)?);
    b.holds("is geometric", x.descriptor().is_geometric());
    b.holds("irredundant", is_irredundant(&x)?);
    Ok(x)
}

fn notdpol() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let x = GeneratorSet::new(pts(&NOTDPOL))?;
    for (q, want) in [("1,0", false), ("2,0", false), ("3/2,0", true), ("1/2,1/2", true)] {
        b.eq(&format!("member ({q})"), want, member(&p(q), &x)?);
    }
    b.eq("vertices", show(&pts(&["0,0", "1,3", "3,0"])), show(&vertices_in(&x)));
    b.eq("geometric", false, x.descriptor().is_geometric());
    b.holds("irredundant", is_irredundant(&x)?);
    let cert = generating_set_semipolytope(x.descriptor())?.reduced()?;
    b.holds("synthesis validates", cert.validate()?);
    b.eq("reduced synthesis", show(x.points()), show(&cert.produced));
    Ok(b.finish("notdpol"))
}

fn qpol() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let x = GeneratorSet::new(pts(&QPOL))?;
    let reference = qpol_reference()?;
    b.holds("matches the reference descriptor", x.descriptor().same_groupoid(&reference)?);
    b.holds("irredundant", is_irredundant(&x)?);
    b.eq("member (1,0)", false, member(&p("1,0"), &x)?);
    b.eq("member (6,0)", true, member(&p("6,0"), &x)?);
    b.eq("member (1/2,1/4)", true, member(&p("1/2,1/4"), &x)?);
    let cert = generating_set_semipolytope(&reference)?.reduced()?;
    b.holds("synthesis validates", cert.validate()?);
    b.eq("reduced synthesis size", 5, cert.produced.len());
    Ok(b.finish("qpol"))
}

fn right333() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let x = generation_checks(&mut b, &RIGHT333)?;
    b.eq("hull", show(&pts(&["0,0", "3,0", "0,3"])), show(x.hull().vertices()));
    let t = TriangleDescriptor::new(0, 3, 3, 0)?;
    b.eq("class", TriangleClass::Right, t.class);
    b.eq("boundary", "3,3,3".to_string(), boundary_string(&t));
    Ok(b.finish("right333"))
}

fn boundary_string(t: &TriangleDescriptor) -> String {
    t.boundary.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn hat31560() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let x = generation_checks(&mut b, &HAT31560)?;
    b.eq("hull", show(&pts(&["0,0", "3,15", "6,0"])), show(x.hull().vertices()));
    b.eq("class", TriangleClass::Hat, classify_representative(3, 15, 6, 0)?);
    Ok(b.finish("hat31560"))
}

fn polygon_example() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let x = GeneratorSet::new(pts(&POLYGON_EXAMPLE))?;
    let target = polytope_descriptor(x.hull())?;
    b.holds("generates the triangle", generates(x.points(), &target)?);
    b.holds("irredundant", is_irredundant(&x)?);
    b.eq(
        "vertices alone",
        false,
        generates(&pts(&["0,0", "3,0", "0,1"]), &target)?,
    );
    let cert = generating_set_polytope(x.hull())?.reduced()?;
    b.eq("reduced synthesis", show(x.points()), show(&cert.produced));
    Ok(b.finish("polygon-example"))
}

fn disc() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let found = unit_circle_points(12);
    b.eq("circle points at cap 12", show(&pts(&["1,0", "-1,0", "0,1", "0,-1"])), show(&found));
    Ok(b.finish("disc"))
}

fn matrices() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let a: Vec<DyadicPoint> = pts(&NOTDPOL);
    let m1 = AffineMap::linear_from_strs(&[&["-1/2", "3/2"], &["1/2", "-1/2"]])?;
    b.eq("det M1", "-1/2".parse::<Dyadic>()?, m1.det().clone());
    for (i, want) in [(0, "0,0"), (1, "1,0"), (3, "0,1")] {
        b.eq(&format!("M1 A{i}"), p(want), m1.apply(&a[i])?);
    }
    let m2 = AffineMap::linear_from_strs(&[&["1/4", "1/2"], &["1/2", "0"]])?;
    let shift = AffineMap::translation_by(p("-1,-1"));
    let t2 = shift.compose(&m2)?;
    b.eq("det M2", "-1/4".parse::<Dyadic>()?, m2.det().clone());
    let images: Vec<DyadicPoint> = [1, 2, 3].iter().map(|&i| t2.apply(&a[i])).collect::<Result<_>>()?;
    b.eq("M2 image of {A1,A2,A3}", show(&pts(&["0,0", "1,0", "0,1"])), show(&images));
    for (k, i) in [1, 2, 3].iter().enumerate() {
        b.eq(&format!("M2 A{i} (pointwise)"), images[k].clone(), t2.apply(&a[*i])?);
    }
    Ok(b.finish("matrices"))
}

fn normalization_pointings() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    b.eq("class T_{12,15,15,12}", TriangleClass::Other, classify_representative(12, 15, 15, 12)?);
    b.eq("class T_{1,9,2,0}", TriangleClass::Hat, classify_representative(1, 9, 2, 0)?);
    let v = pts(&["0,0", "12,15", "15,12"]);
    let found = normalize_all_pointings(&v[0], &v[1], &v[2], DEFAULT_SEARCH_DEPTH)?;
    let names: Vec<String> = found
        .iter()
        .map(|n| n.as_ref().map_or("none".into(), |n| format!("{} {}", n.descriptor, n.descriptor.class)))
        .collect();
    b.eq(
        "pointings of (0,0),(12,15),(15,12)",
        "T_{12,15,15,12} Other; T_{3,27,6,0} Hat; T_{3,27,6,0} Hat".to_string(),
        names.join("; "),
    );
    let reached = found.iter().flatten().any(|n| n.descriptor.params() == (1, 9, 2, 0));
    b.eq("reaches T_{1,9,2,0}", true, reached);

    let v = pts(&["0,0", "10,25", "15,9"]);
    let nz = normalize_triangle(&v[0], &v[1], &v[2], DEFAULT_SEARCH_DEPTH)?;
    b.eq("(10,25),(15,9) pointed at origin", "T_{9,15,25,10}".to_string(), nz.descriptor.to_string());
    b.eq("class T_{9,15,25,10}", TriangleClass::Other, classify_representative(9, 15, 25, 10)?);
    let all_other = normalize_all_pointings(&v[0], &v[1], &v[2], DEFAULT_SEARCH_DEPTH)?
        .iter()
        .all(|n| n.as_ref().is_some_and(|n| n.descriptor.class == TriangleClass::Other));
    b.holds("every pointing of (0,0),(10,25),(15,9) is Other", all_other);
    Ok(b.finish("normalization-pointings"))
}

fn vertex_probe() -> Result<VerifyReport> {
    let mut b = Bundle::default();
    let probe = hat_vertex_probe(3)?;
    b.eq("normal form class (a dyadic simplex)", TriangleClass::Right, probe_class()?);
    b.eq("sentence lists distinct points", 3, probe.sentence_set_size);
    b.eq("vertices alone generate", true, probe.vertices_generate);
    b.eq(
        "irredundant 4-point sets (extra exponent <= 3)",
        "{}".to_string(),
        show(&probe.irredundant_extras),
    );
    b.holds("candidates examined", probe.candidates_checked > 0);
    Ok(b.finish("hat-vertex-probe"))
}

/// Class of the probe triangle, found by normalization.
fn probe_class() -> Result<TriangleClass> {
    let v = pts(&["-1,0", "0,1", "0,3"]);
    Ok(normalize_triangle(&v[0], &v[1], &v[2], DEFAULT_SEARCH_DEPTH)?.descriptor.class)
}

pub fn verify_example(name: &str) -> Result<VerifyReport> {
    match name {
        "notdpol" => notdpol(),
        "qpol" => qpol(),
        "right333" => right333(),
        "hat31560" => hat31560(),
        "polygon-example" => polygon_example(),
        "disc" => disc(),
        "matrices" => matrices(),
        "normalization-pointings" => normalization_pointings(),
        "hat-vertex-probe" => vertex_probe(),
        other => Err(Error::InvalidArgument(format!(
            "unknown example {other:?}; expected one of {}",
            EXAMPLES.join(", ")
        ))),
    }
}
