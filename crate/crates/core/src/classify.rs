//! Isomorphism invariants of dyadic intervals and triangles.
//!
//! Intervals are classified by a single odd number. Triangles are brought into
//! first-quadrant position `T_{i,j,m,n}` with vertices `(0,0)`, `B = (i,j)`,
//! `C = (m,n)` and sorted into right, hat and other classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::dyadic::{odd_part, Dyadic};
use crate::error::{Error, Result};
use crate::groupoid::{is_geometric, GeneratorSet};
use crate::hull::affine_rank;
use crate::lattice::AffineMap;
use crate::point::{odd_gcd_of_difference, DyadicPoint};

pub const DEFAULT_SEARCH_DEPTH: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalDescriptor {
    pub type_k: BigInt,
    pub endpoints: (DyadicPoint, DyadicPoint),
    /// Odd index of the affine D-hull inside the saturated line.
    pub lattice_step: Dyadic,
}

/// Type `k` of the interval generated by a collinear set: `<X>` is isomorphic to `[0, k]`.
pub fn interval_type(x: &GeneratorSet) -> Result<IntervalDescriptor> {
    match affine_rank(x.points()) {
        0 => return Err(Error::Degenerate("a single point is not an interval".into())),
        1 => {}
        _ => return Err(Error::InvalidArgument("points are not collinear".into())),
    }
    let v = x.hull().vertices();
    let (a, b) = (v[0].clone(), v[1].clone());
    let space = x.descriptor().top_subspace();
    let chart = space.chart();
    let ua = chart.forward(&a)?;
    let ub = chart.forward(&b)?;
    let len = ub[0].checked_sub(&ua[0])?.abs();
    let (k, _) = odd_part(len.mantissa())?;
    Ok(IntervalDescriptor {
        type_k: k,
        endpoints: (a, b),
        lattice_step: Dyadic::from_int(space.lattice().invariants()[0].clone()),
    })
}

pub fn intervals_isomorphic(x: &GeneratorSet, y: &GeneratorSet) -> Result<bool> {
    Ok(interval_type(x)?.type_k == interval_type(y)?.type_k)
}

/// Type of the full dyadic segment `[v1, v2]`.
pub fn segment_type(v1: &DyadicPoint, v2: &DyadicPoint) -> Result<BigInt> {
    odd_gcd_of_difference(v1, v2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TriangleClass {
    Right,
    Hat,
    Other,
}

impl fmt::Display for TriangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TriangleClass::Right => "Right",
            TriangleClass::Hat => "Hat",
            TriangleClass::Other => "Other",
        };
        f.write_str(s)
    }
}

/// Whether `(i, j, m, n)` is in first-quadrant position: `i < m`, `n < j`, and
/// `gcd(i, m)`, `gcd(j, n)` odd.
pub fn is_first_quadrant(i: u64, j: u64, m: u64, n: u64) -> bool {
    i < m && n < j && i.gcd(&m) % 2 == 1 && j.gcd(&n) % 2 == 1
}

pub fn classify_representative(i: u64, j: u64, m: u64, n: u64) -> Result<TriangleClass> {
    if !is_first_quadrant(i, j, m, n) {
        return Err(Error::InvalidArgument(format!(
            "({i},{j},{m},{n}) is not in first-quadrant position"
        )));
    }
    let odd = |x: u64| x % 2 == 1;
    if i == 0 && n == 0 && odd(j) && odd(m) && j <= m {
        return Ok(TriangleClass::Right);
    }
    if n == 0 && i > 0 && 2 * i <= m && odd(j) && j > 1 && i.gcd(&j) != j {
        return Ok(TriangleClass::Hat);
    }
    if i != 0 && n != 0 && j <= m {
        let gij = i.gcd(&j);
        let gmn = m.gcd(&n);
        if gij != i && gij != j && gij != 1 && gmn != m && gmn != n && gmn != 1 {
            return Ok(TriangleClass::Other);
        }
    }
    Err(Error::InvalidArgument(format!(
        "({i},{j},{m},{n}) is not a representative triangle"
    )))
}

/// Types of the sides opposite `v1`, `v2`, `v3`.
pub fn boundary_type(
    v1: &DyadicPoint,
    v2: &DyadicPoint,
    v3: &DyadicPoint,
) -> Result<[BigInt; 3]> {
    v2.check_dim(v1.dim())?;
    v3.check_dim(v1.dim())?;
    if affine_rank(&[v1.clone(), v2.clone(), v3.clone()]) != 2 {
        return Err(Error::Degenerate("triangle vertices are collinear".into()));
    }
    Ok([
        segment_type(v2, v3)?,
        segment_type(v1, v3)?,
        segment_type(v1, v2)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDescriptor {
    pub i: u64,
    pub j: u64,
    pub m: u64,
    pub n: u64,
    pub class: TriangleClass,
    pub boundary: [BigInt; 3],
}

impl TriangleDescriptor {
    pub fn new(i: u64, j: u64, m: u64, n: u64) -> Result<Self> {
        let class = classify_representative(i, j, m, n)?;
        let [a, b, c] = Self::vertices_of(i, j, m, n);
        let boundary = boundary_type(&a, &b, &c)?;
        Ok(TriangleDescriptor {
            i,
            j,
            m,
            n,
            class,
            boundary,
        })
    }

    fn vertices_of(i: u64, j: u64, m: u64, n: u64) -> [DyadicPoint; 3] {
        let c = |x: u64| x as i64;
        [
            DyadicPoint::from_ints(&[0, 0]),
            DyadicPoint::from_ints(&[c(i), c(j)]),
            DyadicPoint::from_ints(&[c(m), c(n)]),
        ]
    }

    /// `A = (0,0)`, `B = (i,j)`, `C = (m,n)`.
    pub fn vertices(&self) -> [DyadicPoint; 3] {
        Self::vertices_of(self.i, self.j, self.m, self.n)
    }

    pub fn params(&self) -> (u64, u64, u64, u64) {
        (self.i, self.j, self.m, self.n)
    }
}

impl fmt::Display for TriangleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{},{},{}}}", self.i, self.j, self.m, self.n)
    }
}

/// A representative for one pointing of a triangle, with a witnessing map.
#[derive(Clone, Debug)]
pub struct Normalization {
    /// Index of the input vertex sent to the origin.
    pub pointed_at: usize,
    pub descriptor: TriangleDescriptor,
    /// Carries the input vertices onto the representative's vertices.
    pub map: AffineMap,
    /// Search level at which the representative was found; coordinates are at most `2^level`.
    pub level: u32,
}

/// Searches all three pointings in input order and returns the first representative found.
pub fn normalize_triangle(
    v1: &DyadicPoint,
    v2: &DyadicPoint,
    v3: &DyadicPoint,
    depth: u32,
) -> Result<Normalization> {
    if let Some(nz) = normalize_all_pointings(v1, v2, v3, depth)?.into_iter().flatten().next() {
        return Ok(nz);
    }
    Err(Error::SearchExhausted(depth))
}

/// One search result per pointing, `None` where nothing was found within `depth`.
pub fn normalize_all_pointings(
    v1: &DyadicPoint,
    v2: &DyadicPoint,
    v3: &DyadicPoint,
    depth: u32,
) -> Result<Vec<Option<Normalization>>> {
    let vs = [v1, v2, v3];
    for v in vs {
        v.check_dim(2)?;
    }
    boundary_type(v1, v2, v3)?;
    (0..3)
        .map(|a| {
            let others = [vs[(a + 1) % 3], vs[(a + 2) % 3]];
            normalize_pointed(vs[a], others, depth).map(|r| {
                r.map(|mut nz| {
                    nz.pointed_at = a;
                    nz
                })
            })
        })
        .collect()
}

/// A D-module of `D^2` given by its basis columns, tested by `adj * v = 0 mod odd`.
struct ColumnLattice {
    adj: [[i128; 2]; 2],
    odd: i128,
}

impl ColumnLattice {
    /// The lattice `G D^2` spanned by the columns of the integer matrix `g`.
    fn new(g: [[BigInt; 2]; 2]) -> Result<Self> {
        let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
        let (odd, _) = odd_part(&det.abs())?;
        let odd_i = odd
            .to_i128()
            .filter(|o| *o < (1i128 << 60))
            .ok_or_else(|| Error::InvalidArgument("triangle too large to normalize".into()))?;
        let r = |x: &BigInt| x.mod_floor(&odd).to_i128().expect("reduced below the odd part");
        Ok(ColumnLattice {
            adj: [[r(&g[1][1]), r(&-&g[0][1])], [r(&-&g[1][0]), r(&g[0][0])]],
            odd: odd_i,
        })
    }

    fn contains(&self, x: i128, y: i128) -> bool {
        let o = self.odd;
        (self.adj[0][0] * x + self.adj[0][1] * y) % o == 0
            && (self.adj[1][0] * x + self.adj[1][1] * y) % o == 0
    }
}

/// Representative of the triangle `apex, others` pointed at `apex`.
///
/// A linear map sends `b, c` (rows of `G`) to the rows `(i,j), (m,n)` of `X` iff
/// `G^{-1} X` is a unit of `M_2(D)`, i.e. both columns of `X` lie in the column
/// lattice of `G` and `det X = 2^k det G`. The search runs over integer `X` with
/// entries at most `2^level`, level by level, and keeps the least `(i,j,m,n)`.
fn normalize_pointed(
    apex: &DyadicPoint,
    others: [&DyadicPoint; 2],
    depth: u32,
) -> Result<Option<Normalization>> {
    let b = others[0].sub(apex)?;
    let c = others[1].sub(apex)?;
    let s = b.denom_exp().max(c.denom_exp());
    let bi = b.scaled_ints(s).expect("common denominator");
    let ci = c.scaled_ints(s).expect("common denominator");
    // Orientation 0 sends b to B; orientation 1 sends c to B.
    let lattices = [
        ColumnLattice::new([[bi[0].clone(), bi[1].clone()], [ci[0].clone(), ci[1].clone()]])?,
        ColumnLattice::new([[ci[0].clone(), ci[1].clone()], [bi[0].clone(), bi[1].clone()]])?,
    ];
    let odd = lattices[0].odd;
    // On ties prefer the orientation-preserving map: det M = det X / det G and det X < 0.
    let det0 = &bi[0] * &ci[1] - &bi[1] * &ci[0];
    let order = if det0.is_negative() { [0, 1] } else { [1, 0] };
    for level in 0..=depth {
        let bound: i128 = 1 << level;
        let mut best: Option<((u64, u64, u64, u64), usize)> = None;
        for m in 1..=bound {
            for i in 0..m {
                if (i as u64).gcd(&(m as u64)).is_multiple_of(2) {
                    continue;
                }
                for o in order {
                    let lat = &lattices[o];
                    if !lat.contains(i, m) {
                        continue;
                    }
                    for (j, n) in second_columns(i, m, odd, bound) {
                        if !lat.contains(j, n) {
                            continue;
                        }
                        let key = (i as u64, j as u64, m as u64, n as u64);
                        if classify_representative(key.0, key.1, key.2, key.3).is_err() {
                            continue;
                        }
                        if best.as_ref().is_none_or(|(k, _)| key < *k) {
                            best = Some((key, o));
                        }
                    }
                }
            }
        }
        if let Some(((i, j, m, n), o)) = best {
            let descriptor = TriangleDescriptor::new(i, j, m, n)?;
            let (src_b, src_c) = if o == 0 { (&b, &c) } else { (&c, &b) };
            let map = witness_map(apex, src_b, src_c, &descriptor)?;
            return Ok(Some(Normalization {
                pointed_at: 0,
                descriptor,
                map,
                level,
            }));
        }
    }
    Ok(None)
}

/// All `(j, n)` with `n < j <= bound` and `j m - i n = odd * 2^k` for some `k >= 0`.
fn second_columns(i: i128, m: i128, odd: i128, bound: i128) -> Vec<(i128, i128)> {
    let mut out = Vec::new();
    let mut d = odd;
    while d <= bound * m {
        if i == 0 {
            // only n = 0 can be representative when i = 0
            if d % m == 0 && d / m <= bound {
                out.push((d / m, 0));
            }
        } else {
            // n = (j m - d) / i with 0 <= n < j, so d / m <= j < d / (m - i)
            let lo = (d + m - 1) / m;
            let hi = ((d - 1) / (m - i)).min(bound);
            for j in lo.max(1)..=hi {
                let num = j * m - d;
                if num % i == 0 {
                    out.push((j, num / i));
                }
            }
        }
        d *= 2;
    }
    out
}

/// The map `p -> (p - apex) M` with `M = G^{-1} X`.
fn witness_map(
    apex: &DyadicPoint,
    b: &DyadicPoint,
    c: &DyadicPoint,
    t: &TriangleDescriptor,
) -> Result<AffineMap> {
    let g = [b.to_rational(), c.to_rational()];
    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    let inv = [
        [&g[1][1] / &det, -&g[0][1] / &det],
        [-&g[1][0] / &det, &g[0][0] / &det],
    ];
    let qi = |x: u64| BigRational::from_integer(BigInt::from(x));
    let x = [[qi(t.i), qi(t.j)], [qi(t.m), qi(t.n)]];
    let mut rows = Vec::with_capacity(2);
    for r in 0..2 {
        let mut row = Vec::with_capacity(2);
        for col in 0..2 {
            let e = &inv[r][0] * &x[0][col] + &inv[r][1] * &x[1][col];
            row.push(Dyadic::from_rational(&e).ok_or_else(|| {
                Error::Singular("normalizing map is not dyadic".into())
            })?);
        }
        rows.push(row);
    }
    let linear = AffineMap::linear(rows)?;
    let shift = AffineMap::translation_by(apex.scale(&-Dyadic::one())?);
    let map = shift.compose(&linear)?;
    let [_, vb, vc] = t.vertices();
    let image_b = map.apply(&apex.add(b)?)?;
    let image_c = map.apply(&apex.add(c)?)?;
    debug_assert!(map.apply(apex)?.is_zero());
    if image_b != vb || image_c != vc {
        return Err(Error::Singular("normalizing map misses the representative".into()));
    }
    Ok(map)
}

/// `|X|` equals affine rank plus one.
pub fn is_algebraic_simplex(x: &GeneratorSet) -> bool {
    x.len() == affine_rank(x.points()) + 1
}

/// An algebraic simplex that also coincides with its convex D-hull.
pub fn is_geometric_simplex(x: &GeneratorSet) -> bool {
    is_algebraic_simplex(x) && is_geometric(x)
}
