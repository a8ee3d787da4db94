use serde::Serialize;
use serde_json::{json, Value};

use super::pointfile::PointFile;
use crate::classify::{
    boundary_type, interval_type, normalize_all_pointings, Normalization, TriangleDescriptor,
};
use crate::error::{Error, Result};
use crate::generators::{generating_set_polytope, generating_set_semipolytope, GenerationCertificate};
use crate::groupoid::{closure_bfs, ClosureOptions, ClosureReport};
use crate::groupoid::{GeneratorSet, SemipolytopeDescriptor};
use crate::hull::{convex_hull, RationalPolytope};
use crate::lattice::{AffineDyadicSubspace, AffineMap};
use crate::point::DyadicPoint;

/// JSON document printed by every command.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReportDocument {
    pub op: String,
    pub inputs: Value,
    pub result: Value,
    pub certificate: Value,
    pub evidence: Value,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn error(op: &str, inputs: Value, err: &Error) -> Self {
        ReportDocument {
            op: op.into(),
            inputs,
            result: json!({ "error": err.to_string(), "kind": error_kind(err) }),
            certificate: Value::Null,
            evidence: Value::Null,
        }
    }
}

pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Parse(_) => "parse",
        Error::PointLimit(_) => "point_limit",
        Error::SearchExhausted(_) => "search_exhausted",
        Error::Degenerate(_) => "degenerate",
        _ => "invalid",
    }
}

fn pts_json(v: &[DyadicPoint]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn gens_input(pf: &PointFile) -> Value {
    json!({ "dim": pf.dim, "points": pts_json(&pf.points) })
}

pub fn subspace_json(s: &AffineDyadicSubspace) -> Value {
    json!({
        "dim": s.dim(),
        "base": s.base().to_string(),
        "basis": pts_json(&s.lattice().basis_points()),
        "odd_invariants": s.lattice().invariants().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "saturated": s.is_saturated(),
    })
}

pub fn descriptor_json(d: &SemipolytopeDescriptor) -> Value {
    let hull = d.hull();
    let faces: Vec<Value> = (0..hull.faces().faces.len())
        .map(|f| {
            json!({
                "vertices": pts_json(&hull.face_vertices(f)),
                "subspace": subspace_json(d.subspace(f)),
            })
        })
        .collect();
    json!({
        "dim": d.dim(),
        "vertices": pts_json(hull.vertices()),
        "geometric": d.is_geometric(),
        "faces": faces,
    })
}

pub fn map_json(m: &AffineMap) -> Value {
    json!({
        "matrix": m.matrix_strings(),
        "translation": m.translation().to_string(),
        "det": m.det().to_string(),
    })
}

fn generator_set(pf: &PointFile) -> Result<GeneratorSet> {
    GeneratorSet::new(pf.points.clone())
}

/// Membership of `point` in the groupoid generated by the file's points.
pub fn member(gens: &PointFile, point: &DyadicPoint) -> Result<(ReportDocument, bool)> {
    point.check_dim(gens.dim)?;
    let x = generator_set(gens)?;
    let d = x.descriptor();
    let hull = d.hull();
    let in_hull = hull.contains(point)?;
    let (is_member, evidence) = if in_hull {
        let f = hull.minimal_face(point)?;
        let space = d.subspace(f);
        let in_space = space.contains(point)?;
        (
            in_space,
            json!({
                "in_hull": true,
                "minimal_face": pts_json(&hull.face_vertices(f)),
                "face_subspace": subspace_json(space),
                "in_face_subspace": in_space,
            }),
        )
    } else {
        (false, json!({ "in_hull": false, "hull_vertices": pts_json(hull.vertices()) }))
    };
    let doc = ReportDocument {
        op: "member".into(),
        inputs: json!({ "gens": gens_input(gens), "point": point.to_string() }),
        result: json!({ "member": is_member }),
        certificate: Value::Null,
        evidence,
    };
    Ok((doc, is_member))
}

pub fn closure(gens: &PointFile, opts: &ClosureOptions) -> Result<(ReportDocument, ClosureReport)> {
    let mut rep = closure_bfs(&gens.points, opts)?;
    rep.found.sort();
    let doc = ReportDocument {
        op: "closure".into(),
        inputs: json!({
            "gens": gens_input(gens),
            "exp_cap": opts.exp_cap,
            "slack": opts.slack,
            "point_limit": opts.point_limit,
        }),
        result: json!({
            "count": rep.found.len(),
            "points": pts_json(&rep.found),
        }),
        certificate: Value::Null,
        evidence: json!({
            "saturated": rep.saturated,
            "frontier_size": rep.frontier_size,
            "total_points": rep.total_points,
            "rounds": rep.rounds,
        }),
    };
    Ok((doc, rep))
}

pub fn classify_interval(gens: &PointFile) -> Result<ReportDocument> {
    let x = generator_set(gens)?;
    let iv = interval_type(&x)?;
    Ok(ReportDocument {
        op: "classify.interval".into(),
        inputs: json!({ "gens": gens_input(gens) }),
        result: json!({ "type": iv.type_k.to_string() }),
        certificate: Value::Null,
        evidence: json!({
            "endpoints": [iv.endpoints.0.to_string(), iv.endpoints.1.to_string()],
            "lattice_step": iv.lattice_step.to_string(),
        }),
    })
}

fn triangle_json(t: &TriangleDescriptor) -> Value {
    json!({
        "name": t.to_string(),
        "params": [t.i, t.j, t.m, t.n],
        "class": t.class,
        "boundary": t.boundary.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

pub fn classify_params(i: u64, j: u64, m: u64, n: u64) -> Result<ReportDocument> {
    let t = TriangleDescriptor::new(i, j, m, n)?;
    Ok(ReportDocument {
        op: "classify.triangle".into(),
        inputs: json!({ "params": [i, j, m, n] }),
        result: triangle_json(&t),
        certificate: Value::Null,
        evidence: json!({ "vertices": pts_json(&t.vertices()) }),
    })
}

fn normalization_json(nz: &Normalization, input: &[DyadicPoint]) -> Value {
    json!({
        "pointed_at": input[nz.pointed_at].to_string(),
        "representative": triangle_json(&nz.descriptor),
        "level": nz.level,
        "map": map_json(&nz.map),
    })
}

/// Normal forms of all three pointings of a triangle, searched to `depth`.
pub fn classify_vertices(tri: &PointFile, depth: u32) -> Result<ReportDocument> {
    if tri.dim != 2 || tri.points.len() != 3 {
        return Err(Error::InvalidArgument("expected three points in the plane".into()));
    }
    let v = &tri.points;
    let boundary = boundary_type(&v[0], &v[1], &v[2])?;
    let found = normalize_all_pointings(&v[0], &v[1], &v[2], depth)?;
    let first = found.iter().flatten().next();
    let pointings: Vec<Value> = found
        .iter()
        .enumerate()
        .map(|(a, nz)| match nz {
            Some(nz) => normalization_json(nz, v),
            None => json!({ "pointed_at": v[a].to_string(), "representative": Value::Null }),
        })
        .collect();
    Ok(ReportDocument {
        op: "classify.triangle".into(),
        inputs: json!({ "vertices": pts_json(v), "depth": depth }),
        result: json!({
            "class": first.map(|nz| nz.descriptor.class),
            "representative": first.map(|nz| nz.descriptor.to_string()),
            "boundary": boundary.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        certificate: json!({ "pointings": pointings }),
        evidence: Value::Null,
    })
}

pub enum GensTarget {
    /// Vertices (or any spanning points) of a dyadic polytope.
    Polytope(PointFile),
    /// Generators whose groupoid is the target semipolytope.
    Semipolytope(PointFile),
}

pub fn certificate_json(c: &GenerationCertificate) -> Result<Value> {
    Ok(json!({
        "target": descriptor_json(&c.target),
        "produced": pts_json(&c.produced),
        "validated": c.validate()?,
        "log": serde_json::to_value(&c.log).expect("steps serialize"),
    }))
}

pub fn gens(target: &GensTarget, reduce: bool) -> Result<(ReportDocument, GenerationCertificate)> {
    let (kind, pf, cert) = match target {
        GensTarget::Polytope(pf) => {
            let p: RationalPolytope = convex_hull(&pf.points)?;
            ("polytope", pf, generating_set_polytope(&p)?)
        }
        GensTarget::Semipolytope(pf) => {
            let x = generator_set(pf)?;
            ("semipolytope", pf, generating_set_semipolytope(x.descriptor())?)
        }
    };
    let cert = if reduce { cert.reduced()? } else { cert };
    let doc = ReportDocument {
        op: format!("gens.{kind}"),
        inputs: json!({ kind: gens_input(pf), "reduce": reduce }),
        result: json!({ "count": cert.produced.len(), "generators": pts_json(&cert.produced) }),
        certificate: certificate_json(&cert)?,
        evidence: Value::Null,
    };
    Ok((doc, cert))
}
