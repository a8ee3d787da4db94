//! Plain SVG drawings of one- and two-dimensional point sets.
//! Every number is written as an exact decimal.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::RationalPolytope;
use crate::point::DyadicPoint;

/// Exact decimal expansion of `r`; `None` unless the denominator is of the form `2^a 5^b`.
pub fn finite_decimal(r: &BigRational) -> Option<String> {
    let mut den = r.denom().clone();
    let mut digits = 0usize;
    let ten = BigInt::from(10);
    for f in [2, 5] {
        let f = BigInt::from(f);
        let mut k = 0usize;
        while den.is_multiple_of(&f) {
            den /= &f;
            k += 1;
        }
        digits = digits.max(k);
    }
    if den != BigInt::from(1) {
        return None;
    }
    let scaled = r * BigRational::from_integer(num_traits::pow(ten, digits));
    let n = scaled.to_integer();
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let body = if digits == 0 {
        s
    } else {
        let s = format!("{s:0>width$}", width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    Some(if neg && body != "0" { format!("-{body}") } else { body })
}

fn dec(r: &BigRational) -> String {
    finite_decimal(r).expect("dyadic and decimal scaled values are finite decimals")
}

/// Plane coordinates `(x, y)` of a point of dimension 1 or 2, with `y` negated for screen space.
fn planar(p: &DyadicPoint) -> Result<(BigRational, BigRational)> {
    let q = p.to_rational();
    match q.len() {
        1 => Ok((q[0].clone(), BigRational::zero())),
        2 => Ok((q[0].clone(), -q[1].clone())),
        n => Err(Error::InvalidArgument(format!("cannot draw points of dimension {n}"))),
    }
}

/// Hull edges, found points (small, grey) and generators (large, black).
pub fn render(
    hull: &RationalPolytope,
    generators: &[DyadicPoint],
    found: &[DyadicPoint],
) -> Result<String> {
    let verts = hull
        .vertices()
        .iter()
        .map(planar)
        .collect::<Result<Vec<_>>>()?;
    let xs = verts.iter().map(|v| &v.0);
    let ys = verts.iter().map(|v| &v.1);
    let (x0, x1) = (xs.clone().min().unwrap().clone(), xs.max().unwrap().clone());
    let (y0, y1) = (ys.clone().min().unwrap().clone(), ys.max().unwrap().clone());
    let mut extent = (&x1 - &x0).max(&y1 - &y0);
    if extent.is_zero() {
        extent = BigRational::from_integer(1.into());
    }
    let margin = &extent / BigRational::from_integer(10.into());
    let big_r = &extent / BigRational::from_integer(80.into());
    let small_r = &extent / BigRational::from_integer(200.into());
    let w = &x1 - &x0 + &margin * BigRational::from_integer(2.into());
    let h = &y1 - &y0 + &margin * BigRational::from_integer(2.into());

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        dec(&(&x0 - &margin)),
        dec(&(&y0 - &margin)),
        dec(&w),
        dec(&h)
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="1" vector-effect="non-scaling-stroke">"#
    );
    for f in hull.faces().of_dim(1) {
        let idx = &hull.faces().faces[f].vertices;
        let (a, b) = (&verts[idx[0]], &verts[idx[1]]);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" vector-effect="non-scaling-stroke"/>"#,
            dec(&a.0),
            dec(&a.1),
            dec(&b.0),
            dec(&b.1)
        );
    }
    let _ = writeln!(out, "</g>");
    for (pts, r, fill) in [(found, &small_r, "grey"), (generators, &big_r, "black")] {
        let _ = writeln!(out, r#"<g fill="{fill}">"#);
        for p in pts {
            let (x, y) = planar(p)?;
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, dec(&x), dec(&y), dec(r));
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::convex_hull;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(finite_decimal(&q(3, 8)).unwrap(), "0.375");
        assert_eq!(finite_decimal(&q(-3, 10)).unwrap(), "-0.3");
        assert_eq!(finite_decimal(&q(12, 1)).unwrap(), "12");
        assert_eq!(finite_decimal(&q(-1, 1024)).unwrap(), "-0.0009765625");
        assert_eq!(finite_decimal(&q(0, 1)).unwrap(), "0");
        assert!(finite_decimal(&q(1, 3)).is_none());
    }

    #[test]
    fn draws_triangle() {
        let v: Vec<DyadicPoint> = ["0,0", "1,3", "3,0"].iter().map(|s| s.parse().unwrap()).collect();
        let hull = convex_hull(&v).unwrap();
        let svg = render(&hull, &v, &["3/2,0".parse().unwrap()]).unwrap();
        assert!(svg.contains(r#"viewBox="-0.3 -3.3 3.6 3.6""#));
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.contains(r#"cx="1.5" cy="0""#));
    }
}
