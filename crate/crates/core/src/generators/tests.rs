use num_rational::BigRational;

use super::*;
use crate::groupoid::member;
use crate::Dyadic;

fn p(s: &str) -> DyadicPoint {
    s.parse().unwrap()
}

fn pts(v: &[&str]) -> Vec<DyadicPoint> {
    v.iter().map(|s| p(s)).collect()
}

fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn sorted(mut v: Vec<DyadicPoint>) -> Vec<DyadicPoint> {
    v.sort();
    v
}

fn hull_of(v: &[&str]) -> RationalPolytope {
    convex_hull(&pts(v)).unwrap()
}

#[test]
fn density_choices() {
    assert_eq!(min_exp_dyadic_between(&r(1, 3), &r(2, 3)).unwrap(), d("1/2"));
    assert_eq!(min_exp_dyadic_between(&r(24, 100), &r(26, 100)).unwrap(), d("1/4"));
    assert_eq!(min_exp_dyadic_between(&r(-5, 2), &r(7, 1)).unwrap(), d("-2"));
    let x = dyadic_between(&p("0,0"), &p("3,3"), &r(3, 10), &r(4, 10)).unwrap();
    assert_eq!(x, p("9/8,9/8"));
    assert!(min_exp_dyadic_between(&r(1, 2), &r(1, 2)).is_err());
}

#[test]
fn three_point_generation() {
    let t = |a: &str, b: &str, c: &str| three_point_generates_interval(&d(a), &d(b), &d(c));
    assert!(t("0", "1", "3").unwrap());
    assert!(t("0", "2", "3").unwrap());
    assert!(!t("0", "3", "9").unwrap());
    assert!(t("0", "1", "0").is_err());
    let g = GeneratorSet::from_strs(&["0", "3", "9"]).unwrap();
    assert!(!member(&p("1"), &g).unwrap());
}

#[test]
fn inner_simplices() {
    let sq = hull_of(&["0,0", "1,0", "0,1", "1,1"]);
    let s = inner_simplex(&sq, &p("1/2,1/2")).unwrap();
    assert_eq!(s, pts(&["1/2,1/2", "1,1/2", "1/2,1"]));

    let seg = hull_of(&["0", "3"]);
    assert_eq!(inner_simplex(&seg, &p("1")).unwrap(), pts(&["1", "2"]));
    assert!(inner_simplex(&seg, &p("0")).is_err());

    let tri = hull_of(&["0,0", "1,3", "3,0"]);
    let s = inner_simplex(&tri, &p("1,1")).unwrap();
    assert_eq!(s, pts(&["1,1", "2,1", "1,2"]));
    let g = GeneratorSet::new(s).unwrap();
    assert!(g.descriptor().is_geometric());
}

#[test]
fn interval_generators() {
    let cert = generating_set_polytope(&hull_of(&["0", "9"])).unwrap();
    assert_eq!(sorted(cert.produced.clone()), pts(&["0", "1", "9"]));
    let cert = generating_set_polytope(&hull_of(&["0", "1"])).unwrap();
    assert_eq!(cert.produced.len(), 2);
    let cert = generating_set_polytope(&hull_of(&["0", "3/2"])).unwrap();
    assert_eq!(sorted(cert.produced), pts(&["0", "1", "3/2"]));
    // a slanted segment of type 5
    let cert = generating_set_polytope(&hull_of(&["0,0", "5,10"])).unwrap();
    assert_eq!(cert.produced.len(), 3);
    assert!(cert.validate().unwrap());
}

#[test]
fn small_triangle_reduces() {
    let cert = generating_set_polytope(&hull_of(&["0,0", "3,0", "0,1"]))
        .unwrap()
        .reduced()
        .unwrap();
    assert!(cert.validate().unwrap());
    assert_eq!(sorted(cert.produced), pts(&["0,0", "0,1", "1,0", "3,0"]));
}

#[test]
fn right_and_hat_sets_are_irredundant() {
    let right = GeneratorSet::from_strs(&["0,0", "3,0", "0,3", "0,1", "1,0", "2,1"]).unwrap();
    let target = polytope_descriptor(right.hull()).unwrap();
    assert!(right.descriptor().same_groupoid(&target).unwrap());
    assert!(is_irredundant(&right).unwrap());
    assert_eq!(irredundant_reduce(&right).unwrap().points(), right.points());

    let hat = GeneratorSet::from_strs(&["0,0", "3,15", "6,0", "1,5", "5,5", "1,0", "1,1"]).unwrap();
    let target = polytope_descriptor(hat.hull()).unwrap();
    assert!(hat.descriptor().same_groupoid(&target).unwrap());
    assert!(is_irredundant(&hat).unwrap());
}

#[test]
fn constructed_triangle_sets_validate() {
    for v in [
        ["0,0", "3,0", "0,3"],
        ["0,0", "6,0", "3,15"],
        ["0,0", "12,15", "15,12"],
        ["1/2,0", "3,1/4", "-1,5"],
    ] {
        let cert = generating_set_polytope(&hull_of(&v)).unwrap().reduced().unwrap();
        assert!(cert.validate().unwrap(), "{v:?}");
        assert!(is_irredundant(&cert.generator_set().unwrap()).unwrap(), "{v:?}");
    }
}

#[test]
fn right_fast_path_uses_sides() {
    let cert = generating_set_polytope(&hull_of(&["0,0", "3,0", "0,3"])).unwrap();
    assert!(cert
        .log
        .iter()
        .any(|s| matches!(s, ConstructionStep::RightTriangle { .. })));
    assert_eq!(cert.produced.len(), 6);
}

#[test]
fn semipolytope_examples() {
    let qpol = GeneratorSet::from_strs(&["0,0", "0,1", "9,0", "3,0", "1,1/2"]).unwrap();
    assert!(is_irredundant(&qpol).unwrap());
    let cert = generating_set_semipolytope(qpol.descriptor()).unwrap().reduced().unwrap();
    assert!(cert.validate().unwrap());

    let notdpol = GeneratorSet::from_strs(&["0,0", "1,3", "3,0", "1,1"]).unwrap();
    assert!(is_irredundant(&notdpol).unwrap());
    let cert = generating_set_semipolytope(notdpol.descriptor()).unwrap().reduced().unwrap();
    assert!(cert.validate().unwrap());
    assert_eq!(cert.produced.len(), 4);
}

#[test]
fn polytope_target_matches_semipolytope_path() {
    let tri = hull_of(&["0,0", "4,0", "0,4"]);
    let a = generating_set_polytope(&tri).unwrap();
    let b = generating_set_semipolytope(&polytope_descriptor(&tri).unwrap()).unwrap();
    assert_eq!(a.produced, b.produced);
}

#[test]
fn anchors_respect_wall_lattices() {
    let notdpol = GeneratorSet::from_strs(&["0,0", "1,3", "3,0", "1,1"]).unwrap();
    let s = notdpol.descriptor();
    let ys = anchors(s).unwrap();
    assert_eq!(ys.len(), 3);
    assert!(ys.contains(&p("3/2,0")));
    for y in &ys {
        assert!(s.member(y).unwrap());
        assert!(!s.hull().is_vertex(y));
    }
    assert_eq!(inner_polytope(s, &ys).unwrap().dim(), 2);

    let seg = GeneratorSet::from_strs(&["0", "3"]).unwrap();
    assert_eq!(sorted(anchors(seg.descriptor()).unwrap()), pts(&["0", "3"]));
}

#[test]
fn line_triple_on_segment() {
    let s = polytope_descriptor(&hull_of(&["0", "3"])).unwrap();
    let t = wall_line_triple(&s, &pts(&["1", "2"]), &p("1/2")).unwrap();
    assert_eq!(t.b, p("0"));
    assert!(t.c > p("1") && t.c < p("2"));
    assert!(t.d > p("1/2") && t.d < t.c);
    assert!(t.c.sub(&t.d).unwrap().coord(0).mantissa() == &1.into());
    assert!(wall_line_triple(&s, &pts(&["1", "2"]), &p("3/2")).is_err());
    assert!(wall_line_triple(&s, &pts(&["1", "2"]), &p("0")).is_err());
}

#[test]
fn line_triple_in_plane() {
    let s = polytope_descriptor(&hull_of(&["0,0", "4,0", "0,4", "4,4"])).unwrap();
    let simplex = pts(&["1,1", "2,1", "1,2"]);
    let a = p("1/2,3");
    let t = wall_line_triple(&s, &simplex, &a).unwrap();
    let sh = convex_hull(&simplex).unwrap();
    assert!(sh.relint_contains(&t.c).unwrap() && sh.relint_contains(&t.d).unwrap());
    assert!(s.hull().face_contains(t.wall, &t.b).unwrap());
    let g = GeneratorSet::new(vec![t.b.clone(), t.c.clone(), t.d.clone()]).unwrap();
    assert_eq!(g.hull().dim(), 1);
    assert!(member(&a, &g).unwrap());
}

#[test]
fn line_triple_in_semipolytope() {
    let notdpol = GeneratorSet::from_strs(&["0,0", "1,3", "3,0", "1,1"]).unwrap();
    let s = notdpol.descriptor();
    let simplex = pts(&["1,1", "2,1", "1,2"]);
    let a = p("1/2,1/4");
    let t = wall_line_triple(s, &simplex, &a).unwrap();
    assert!(s.member(&t.b).unwrap());
    let mut g = vec![t.b.clone(), t.c.clone(), t.d.clone()];
    assert!(member(&a, &GeneratorSet::new(g.clone()).unwrap()).unwrap());
    g.extend(simplex);
    assert!(member(&a, &GeneratorSet::new(g).unwrap()).unwrap());
}

#[test]
fn reduce_drops_midpoint() {
    let x = GeneratorSet::from_strs(&["0", "1/2", "1"]).unwrap();
    assert_eq!(irredundant_reduce(&x).unwrap().points(), pts(&["0", "1"]).as_slice());
}

#[test]
fn vertex_probe() {
    let probe = hat_vertex_probe(2).unwrap();
    assert!(probe.vertices_generate);
    assert_eq!(probe.sentence_set_size, 3);
    assert!(probe.irredundant_extras.is_empty());
    assert!(probe.candidates_checked > 0);
}
