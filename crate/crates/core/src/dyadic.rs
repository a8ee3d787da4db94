//! Dyadic rationals `m * 2^e` kept in canonical form (odd `m`, or zero as `0 * 2^0`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

/// Splits a nonzero integer into its odd part and the exponent of 2 it carries.
pub fn odd_part(n: &BigInt) -> Result<(BigInt, u64)> {
    let tz = n.trailing_zeros().ok_or(Error::ZeroOddPart)?;
    Ok((n >> tz, tz))
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0).expect("integer exponent 0 cannot overflow")
    }

    /// Builds `m * 2^e`, normalising to an odd mantissa.
    pub fn new(mantissa: BigInt, exponent: i64) -> Result<Self> {
        match mantissa.trailing_zeros() {
            None => Ok(Dyadic::zero()),
            Some(tz) => {
                let tz_i = i64::try_from(tz).map_err(|_| Error::ExponentOverflow)?;
                let exponent = exponent.checked_add(tz_i).ok_or(Error::ExponentOverflow)?;
                Ok(Dyadic {
                    mantissa: mantissa >> tz,
                    exponent,
                })
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Exponent of 2 in the reduced denominator.
    pub fn denom_exp(&self) -> u64 {
        if self.exponent < 0 {
            self.exponent.unsigned_abs()
        } else {
            0
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (lo, hi) = if self.exponent <= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exponent as i128 - lo.exponent as i128) as u64;
        Dyadic::new(&lo.mantissa + (&hi.mantissa << shift), lo.exponent)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Dyadic::zero());
        }
        let e = self
            .exponent
            .checked_add(other.exponent)
            .ok_or(Error::ExponentOverflow)?;
        Ok(Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exponent: e,
        })
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Dyadic::zero());
        }
        let e = self.exponent.checked_add(k).ok_or(Error::ExponentOverflow)?;
        Ok(Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: e,
        })
    }

    pub fn half(&self) -> Self {
        self.mul_pow2(-1).expect("dyadic exponent overflow")
    }

    /// Exact division by an odd integer, when the quotient is dyadic.
    pub fn div_odd(&self, odd: &BigInt) -> Option<Self> {
        if odd.is_zero() || odd.is_even() {
            return None;
        }
        let (q, r) = self.mantissa.div_rem(odd);
        if !r.is_zero() {
            return None;
        }
        Some(Dyadic {
            mantissa: q,
            exponent: self.exponent,
        })
    }

    /// True when `self` lies in `odd * D`.
    pub fn divisible_by_odd(&self, odd: &BigInt) -> bool {
        (&self.mantissa % odd).is_zero()
    }

    /// Value times `2^k` as an integer, if exact.
    pub fn scaled_int(&self, k: u64) -> Option<BigInt> {
        let k = i64::try_from(k).ok()?;
        let e = self.exponent.checked_add(k)?;
        if e < 0 {
            None
        } else {
            Some(&self.mantissa << (e as u64))
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << (self.exponent as u64))
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << self.exponent.unsigned_abs(),
            )
        }
    }

    /// Converts a rational whose reduced denominator is a power of 2.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let den = r.denom();
        let (odd, pow) = odd_part(den).ok()?;
        if !odd.is_one() {
            return None;
        }
        let e = i64::try_from(pow).ok()?;
        Dyadic::new(r.numer().clone(), -e).ok()
    }

    /// Exact decimal expansion; every dyadic has a finite one.
    pub fn to_decimal(&self) -> String {
        if self.exponent >= 0 {
            return (&self.mantissa << (self.exponent as u64)).to_string();
        }
        let k = self.exponent.unsigned_abs();
        let digits = (self.mantissa.abs() * num_traits::pow(BigInt::from(5), k as usize)).to_string();
        let k = k as usize;
        let padded = if digits.len() <= k {
            format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - k);
        let frac = frac.trim_end_matches('0');
        let sign = if self.signum() < 0 { "-" } else { "" };
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::from_int(n)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b {
            return a.cmp(&b);
        }
        let e = self.exponent.min(other.exponent);
        let l = &self.mantissa << ((self.exponent as i128 - e as i128) as u64);
        let r = &other.mantissa << ((other.exponent as i128 - e as i128) as u64);
        l.cmp(&r)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

// Operator forms panic on exponent overflow; use the checked_* methods to recover.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                self.$checked(rhs).expect("dyadic exponent overflow")
            }
        }
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$checked(&rhs).expect("dyadic exponent overflow")
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$checked(rhs).expect("dyadic exponent overflow")
            }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                self.$checked(&rhs).expect("dyadic exponent overflow")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let body = t.strip_prefix(['+', '-']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    BigInt::from_str(t).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `M*2^E`, a plain integer, or `A/B` with `B` a positive power of 2.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((m, e)) = s.split_once("*2^") {
            let m = parse_int(m)?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            return Dyadic::new(m, e);
        }
        if let Some((a, b)) = s.split_once('/') {
            let a = parse_int(a)?;
            let b = parse_int(b)?;
            if !b.is_positive() {
                return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
            }
            let (odd, pow) = odd_part(&b)?;
            if !odd.is_one() {
                return Err(Error::Parse(format!("denominator is not a power of 2 in {s:?}")));
            }
            let e = i64::try_from(pow).map_err(|_| Error::ExponentOverflow)?;
            return Dyadic::new(a, -e);
        }
        Ok(Dyadic::from_int(parse_int(s)?))
    }
}
