//! Deterministic choices of dyadic points: dense dyadic points, extra interval
//! points, interior points of faces, inner simplices, anchors and line triples.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{odd_part, Dyadic};
use crate::error::{Error, Result};
use crate::groupoid::SemipolytopeDescriptor;
use crate::hull::{affine_rank, convex_hull, RationalPolytope};
use crate::lattice::{affine_hull, AffineDyadicSubspace};
use crate::point::{affine_combination, exp_lex_cmp, DyadicPoint};

/// Grid points examined per exponent level before falling back to a barycentre.
const GRID_BUDGET: u64 = 1 << 14;
const MAX_GRID_EXP: u32 = 48;

/// Least denominator exponent first, then coordinates compared from the last one.
pub fn exp_colex_cmp(a: &DyadicPoint, b: &DyadicPoint) -> Ordering {
    a.denom_exp()
        .cmp(&b.denom_exp())
        .then_with(|| a.coords().iter().rev().cmp(b.coords().iter().rev()))
}

/// The dyadic `d` with `t1 < d < t2` of least denominator exponent, then least value.
pub fn min_exp_dyadic_between(t1: &BigRational, t2: &BigRational) -> Result<Dyadic> {
    if t1 >= t2 {
        return Err(Error::InvalidArgument("empty parameter interval".into()));
    }
    let mut e: i64 = 0;
    loop {
        let scale = BigRational::from_integer(BigInt::one() << e);
        let n = (t1 * &scale).floor().to_integer() + 1;
        let d = Dyadic::new(n, -e)?;
        if &d.to_rational() < t2 {
            return Ok(d);
        }
        e += 1;
    }
}

/// A dyadic point `p + d (q - p)` with `t1 < d < t2`.
pub fn dyadic_between(
    p: &DyadicPoint,
    q: &DyadicPoint,
    t1: &BigRational,
    t2: &BigRational,
) -> Result<DyadicPoint> {
    if p == q {
        return Err(Error::Degenerate("coincident points".into()));
    }
    let d = min_exp_dyadic_between(t1, t2)?;
    p.add(&q.sub(p)?.scale(&d)?)
}

/// Whether `[a, b]` or `[b, c]` is a dyadic simplex, i.e. has length a power of 2.
pub fn three_point_generates_interval(a: &Dyadic, b: &Dyadic, c: &Dyadic) -> Result<bool> {
    if !(a < b && b < c) {
        return Err(Error::InvalidArgument("expected a < b < c".into()));
    }
    let unit = |x: Dyadic| x.mantissa().is_one();
    Ok(unit(b.checked_sub(a)?) || unit(c.checked_sub(b)?))
}

fn floor_int(d: &Dyadic) -> BigInt {
    if d.exponent() >= 0 {
        d.mantissa() << d.exponent() as usize
    } else {
        d.mantissa().div_floor(&(BigInt::one() << (-d.exponent()) as usize))
    }
}

fn ceil_int(d: &Dyadic) -> BigInt {
    -floor_int(&-d)
}

/// Extra generator for the interval `[a, c]` of a line `space`, if its type is not 1.
///
/// Candidates sit a power of 2 away from one end (in chart units); the least one
/// by denominator exponent, then colex order, is returned.
pub fn interval_extra_point(
    space: &AffineDyadicSubspace,
    a: &DyadicPoint,
    c: &DyadicPoint,
) -> Result<Option<DyadicPoint>> {
    if space.dim() != 1 {
        return Err(Error::InvalidArgument("interval space must be a line".into()));
    }
    let chart = space.chart();
    let mut ua = chart.forward(a)?.remove(0);
    let mut uc = chart.forward(c)?.remove(0);
    if ua > uc {
        std::mem::swap(&mut ua, &mut uc);
    }
    let len = uc.checked_sub(&ua)?;
    if len.is_zero() {
        return Err(Error::Degenerate("interval endpoints coincide".into()));
    }
    if len.mantissa().is_one() {
        return Ok(None);
    }
    let t_max = len.exponent() + len.mantissa().bits() as i64 - 1;
    let e = ua.denom_exp().max(uc.denom_exp()) as i64;
    let mut best: Option<DyadicPoint> = None;
    for t in t_max.min(-e)..=t_max {
        let step = Dyadic::new(BigInt::one(), t)?;
        for u in [ua.checked_add(&step)?, uc.checked_sub(&step)?] {
            let x = chart.backward(&[u])?;
            if best.as_ref().is_none_or(|b| exp_colex_cmp(&x, b) == Ordering::Less) {
                best = Some(x);
            }
        }
    }
    Ok(best)
}

/// Type of the interval `[a, c]` measured in the line `space`.
pub fn interval_type_in(
    space: &AffineDyadicSubspace,
    a: &DyadicPoint,
    c: &DyadicPoint,
) -> Result<BigInt> {
    let chart = space.chart();
    let len = chart.forward(c)?[0].checked_sub(&chart.forward(a)?[0])?;
    Ok(odd_part(len.mantissa())?.0.abs())
}

/// All points of `space` in the relative interior of `poly` on the grid of step
/// `2^-e` in chart coordinates; `None` when the grid exceeds the budget.
fn relint_grid(
    space: &AffineDyadicSubspace,
    poly: &RationalPolytope,
    e: u32,
) -> Result<Option<Vec<DyadicPoint>>> {
    let chart = space.chart();
    let k = space.dim();
    let coords = poly
        .vertices()
        .iter()
        .map(|v| chart.forward(v))
        .collect::<Result<Vec<_>>>()?;
    let mut ranges = Vec::with_capacity(k);
    let mut count: u64 = 1;
    for j in 0..k {
        let lo = coords.iter().map(|u| &u[j]).min().expect("non-empty polytope");
        let hi = coords.iter().map(|u| &u[j]).max().expect("non-empty polytope");
        let lo = ceil_int(&lo.mul_pow2(e as i64)?);
        let hi = floor_int(&hi.mul_pow2(e as i64)?);
        if hi < lo {
            return Ok(Some(Vec::new()));
        }
        let width: BigInt = &hi - &lo + 1;
        let w = u64::try_from(width).unwrap_or(u64::MAX);
        count = count.saturating_mul(w);
        if count > GRID_BUDGET {
            return Ok(None);
        }
        ranges.push((lo, hi));
    }
    let mut hits = Vec::new();
    let mut cur: Vec<BigInt> = ranges.iter().map(|r| r.0.clone()).collect();
    'outer: loop {
        let u = cur
            .iter()
            .map(|n| Dyadic::new(n.clone(), -(e as i64)))
            .collect::<Result<Vec<_>>>()?;
        let x = chart.backward(&u)?;
        if poly.relint_contains(&x)? {
            hits.push(x);
        }
        for j in (0..k).rev() {
            if cur[j] < ranges[j].1 {
                cur[j] += 1;
                continue 'outer;
            }
            cur[j] = ranges[j].0.clone();
        }
        break;
    }
    Ok(Some(hits))
}

/// A point of `space` in the relative interior of `poly`: least chart exponent,
/// then least denominator exponent and lexicographic order.
pub fn min_exp_relint_point(
    space: &AffineDyadicSubspace,
    poly: &RationalPolytope,
) -> Result<DyadicPoint> {
    if poly.dim() == 0 {
        return Ok(poly.vertices()[0].clone());
    }
    if space.dim() != poly.dim() {
        return Err(Error::InvalidArgument(format!(
            "polytope of dimension {} in a space of dimension {}",
            poly.dim(),
            space.dim()
        )));
    }
    for e in 0..=MAX_GRID_EXP {
        match relint_grid(space, poly, e)? {
            None => break,
            Some(hits) => {
                if let Some(best) = hits.into_iter().min_by(exp_lex_cmp) {
                    return Ok(best);
                }
            }
        }
    }
    barycentric_relint_point(poly)
}

/// `sum w_i v_i` over affinely independent vertices with weights `1/2, 1/4, ..., 1/2^k, 1/2^k`.
fn barycentric_relint_point(poly: &RationalPolytope) -> Result<DyadicPoint> {
    let mut chosen: Vec<DyadicPoint> = Vec::new();
    for v in poly.vertices() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if chosen.is_empty() || affine_rank(&trial) == chosen.len() {
            chosen = trial;
        }
        if chosen.len() == poly.dim() + 1 {
            break;
        }
    }
    let k = chosen.len() - 1;
    let mut weights: Vec<Dyadic> = (1..=k as i64)
        .map(|i| Dyadic::new(BigInt::one(), -i))
        .collect::<Result<_>>()?;
    weights.push(Dyadic::new(BigInt::one(), -(k as i64))?);
    affine_combination(&chosen, &weights)
}

fn direction_basis(space: &AffineDyadicSubspace) -> Vec<DyadicPoint> {
    let n = space.ambient_dim();
    if space.dim() == n && space.is_saturated() {
        (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                DyadicPoint::from_ints(&v)
            })
            .collect()
    } else {
        space.lattice().basis_points()
    }
}

/// `{a, a + 2^-k e_1, ..., a + 2^-k e_n}` for the least `k >= 0` keeping all points
/// in `p`, where `e_i` is a basis of the saturated affine hull of `p`.
pub fn inner_simplex(p: &RationalPolytope, a: &DyadicPoint) -> Result<Vec<DyadicPoint>> {
    let space = affine_hull(p.vertices())?.saturate();
    inner_simplex_in(&space, p, a)
}

/// As [`inner_simplex`], with the basis taken from the lattice of `space`.
pub fn inner_simplex_in(
    space: &AffineDyadicSubspace,
    p: &RationalPolytope,
    a: &DyadicPoint,
) -> Result<Vec<DyadicPoint>> {
    if !p.relint_contains(a)? {
        return Err(Error::InvalidArgument(format!("{a} is not an interior point")));
    }
    if !space.contains(a)? {
        return Err(Error::NotInSubspace);
    }
    let basis = direction_basis(space);
    let mut k: i64 = 0;
    loop {
        let mut pts = vec![a.clone()];
        for w in &basis {
            pts.push(a.add(&w.mul_pow2(-k)?)?);
        }
        let mut inside = true;
        for q in &pts[1..] {
            if !p.contains(q)? {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(pts);
        }
        k += 1;
    }
}

/// One point per maximal wall, in the wall's subspace and relative interior.
pub fn anchors(s: &SemipolytopeDescriptor) -> Result<Vec<DyadicPoint>> {
    let hull = s.hull();
    if hull.dim() == 0 {
        return Err(Error::Degenerate("a point has no walls".into()));
    }
    let faces = hull.faces();
    faces
        .maximal_subfaces(faces.top())
        .into_iter()
        .map(|f| min_exp_relint_point(s.subspace(f), &hull.face_polytope(f)))
        .collect()
}

pub fn inner_polytope(s: &SemipolytopeDescriptor, anchors: &[DyadicPoint]) -> Result<RationalPolytope> {
    let p = convex_hull(anchors)?;
    if p.dim() != s.dim() {
        return Err(Error::Degenerate(format!(
            "anchors span dimension {} instead of {}",
            p.dim(),
            s.dim()
        )));
    }
    Ok(p)
}

/// Points `B` on a maximal wall, `C`, `D` inside a simplex, with `A` strictly between
/// `B` and `C` and `[D, C]` of type 1 in the line's lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTriple {
    pub b: DyadicPoint,
    pub c: DyadicPoint,
    pub d: DyadicPoint,
    /// Face index of the wall containing `B`.
    pub wall: usize,
}

fn dot_q(n: &[BigInt], x: &[BigRational]) -> BigRational {
    n.iter()
        .zip(x)
        .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Open parameter interval of `t > t_min` with `x + t v` strictly inside `poly` (full span assumed).
fn open_interval_inside(
    poly: &RationalPolytope,
    x: &[BigRational],
    v: &[BigRational],
    t_min: &BigRational,
) -> Option<(BigRational, BigRational)> {
    let mut lo = t_min.clone();
    let mut hi: Option<BigRational> = None;
    for f in poly.facets() {
        let off = f.offset.to_rational();
        let a = dot_q(&f.normal, x) - &off;
        let b = dot_q(&f.normal, v);
        // need a + t b > 0
        if b.is_zero() {
            if !a.is_positive() {
                return None;
            }
        } else if b.is_positive() {
            let t = -&a / &b;
            if t > lo {
                lo = t;
            }
        } else {
            let t = -&a / &b;
            if hi.as_ref().is_none_or(|h| &t < h) {
                hi = Some(t);
            }
        }
    }
    for (n, o) in poly.equalities() {
        if dot_q(n, v) != BigRational::zero() || dot_q(n, x) != o.to_rational() {
            return None;
        }
    }
    let hi = hi?;
    (lo < hi).then_some((lo, hi))
}

pub fn wall_line_triple(
    s: &SemipolytopeDescriptor,
    simplex: &[DyadicPoint],
    a: &DyadicPoint,
) -> Result<LineTriple> {
    let hull = s.hull();
    let space = s.top_subspace();
    if !hull.relint_contains(a)? {
        return Err(Error::InvalidArgument(format!(
            "{a} is not interior; recurse to the wall instead"
        )));
    }
    if !space.contains(a)? {
        return Err(Error::NotInSubspace);
    }
    let sh = convex_hull(simplex)?;
    if sh.dim() != hull.dim() {
        return Err(Error::Degenerate("simplex is not full-dimensional".into()));
    }
    for v in simplex {
        if !hull.contains(v)? || !space.contains(v)? {
            return Err(Error::InvalidArgument(format!("simplex vertex {v} is outside the target")));
        }
    }
    if sh.contains(a)? {
        return Err(Error::InvalidArgument(format!("{a} lies in the simplex")));
    }
    let aq = a.to_rational();
    for e in 0..=MAX_GRID_EXP {
        let Some(centres) = relint_grid(space, &sh, e)? else {
            break;
        };
        for c0 in centres {
            if let Some(t) = triple_through(s, &sh, a, &aq, &c0)? {
                return Ok(t);
            }
        }
    }
    Err(Error::SearchExhausted(MAX_GRID_EXP))
}

/// Tries the ray from `c0` through `a`; succeeds when it leaves through a single facet.
fn triple_through(
    s: &SemipolytopeDescriptor,
    sh: &RationalPolytope,
    a: &DyadicPoint,
    aq: &[BigRational],
    c0: &DyadicPoint,
) -> Result<Option<LineTriple>> {
    let hull = s.hull();
    let dir = sub_q(aq, &c0.to_rational());
    let mut exits: Vec<(BigRational, usize)> = Vec::new();
    for (i, f) in hull.facets().iter().enumerate() {
        let b = dot_q(&f.normal, &dir);
        if b.is_negative() {
            let slack = dot_q(&f.normal, aq) - f.offset.to_rational();
            exits.push((slack / -b, i));
        }
    }
    exits.sort();
    let (t_star, facet) = match exits.as_slice() {
        [(t, i)] => (t.clone(), *i),
        [(t, i), (u, _), ..] if t < u => (t.clone(), *i),
        _ => return Ok(None),
    };
    let r: Vec<BigRational> = aq.iter().zip(&dir).map(|(x, d)| x + &t_star * d).collect();
    let mut idx = hull.facets()[facet].vertices.clone();
    idx.sort_unstable();
    let wall = hull
        .faces()
        .find(&idx)
        .ok_or_else(|| Error::Degenerate("exit facet not found".into()))?;
    let wall_poly = hull.face_polytope(wall);
    let wall_space = s.subspace(wall);
    for e in 0..=MAX_GRID_EXP {
        let Some(mut cands) = relint_grid(wall_space, &wall_poly, e)? else {
            break;
        };
        let dist = |x: &DyadicPoint| {
            sub_q(&x.to_rational(), &r)
                .iter()
                .fold(BigRational::zero(), |acc, d| acc + d * d)
        };
        cands.sort_by(|x, y| dist(x).cmp(&dist(y)).then_with(|| x.cmp(y)));
        for b in cands {
            let v = sub_q(aq, &b.to_rational());
            let Some((lo, hi)) = open_interval_inside(sh, aq, &v, &BigRational::zero()) else {
                continue;
            };
            let step = min_exp_dyadic_between(&lo, &hi)?;
            let c = a.add(&a.sub(&b)?.scale(&step)?)?;
            let d = type_one_partner(s.top_subspace(), sh, &b, &c)?;
            return Ok(Some(LineTriple { b, c, d, wall }));
        }
    }
    Ok(None)
}

/// A point `D` strictly inside `sh` on `[B, C]` with `[D, C]` of type 1 in the line's lattice.
fn type_one_partner(
    space: &AffineDyadicSubspace,
    sh: &RationalPolytope,
    b: &DyadicPoint,
    c: &DyadicPoint,
) -> Result<DyadicPoint> {
    let chart = space.chart();
    let ub = chart.forward(b)?;
    let uc = chart.forward(c)?;
    let u: Vec<Dyadic> = ub.iter().zip(&uc).map(|(x, y)| x.checked_sub(y)).collect::<Result<_>>()?;
    let mut g = BigInt::zero();
    for x in &u {
        if !x.is_zero() {
            g = g.gcd(&odd_part(x.mantissa())?.0);
        }
    }
    let prim: Vec<Dyadic> = u
        .iter()
        .map(|x| x.div_odd(&g).expect("gcd divides every coordinate"))
        .collect();
    let mut k: i64 = 0;
    loop {
        let w: Vec<Dyadic> = uc
            .iter()
            .zip(&prim)
            .map(|(x, p)| x.checked_add(&p.mul_pow2(-k)?))
            .collect::<Result<_>>()?;
        let d = chart.backward(&w)?;
        if sh.relint_contains(&d)? {
            return Ok(d);
        }
        k += 1;
    }
}
