//! Numeric helpers: exact rational parsing/formatting, extended reals and
//! outward-rounded logarithm enclosures.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Exact textual form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn rational_from_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Nearest integer to `(num/den)^(1/k)`, ties rounded up. Requires `num/den >= 0`.
pub fn nearest_root(num: &BigInt, den: &BigInt, k: u32) -> BigInt {
    assert!(k >= 1 && den.is_positive() && !num.is_negative());
    // floor first
    let mut r = (num / den).nth_root(k);
    while (&r + 1u32).pow(k) * den <= *num {
        r += 1u32;
    }
    while r.pow(k) * den > *num {
        r -= 1u32;
    }
    // r <= x < r+1; round up iff x >= r + 1/2  <=>  (2r+1)^k * den <= 2^k * num
    let twice = BigInt::from(2u32) * &r + 1u32;
    if twice.pow(k) * den <= (BigInt::one() << k) * num {
        r + 1u32
    } else {
        r
    }
}

/// Nearest integer to `base^exponent / divisor` for a nonnegative rational exponent.
pub fn nearest_rational_power(base: &BigInt, exponent: &BigRational, divisor: u32) -> BigInt {
    assert!(!exponent.is_negative());
    let p = exponent.numer().to_u32().expect("exponent numerator too large");
    let k = exponent.denom().to_u32().expect("exponent denominator too large");
    let num = base.pow(p);
    let den = BigInt::from(divisor).pow(k);
    nearest_root(&num, &den, k)
}

/// Value in the extended real line used for exponents and residuals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtReal {
    pub fn finite(q: BigRational) -> Self {
        ExtReal::Finite(q)
    }

    pub fn int(n: i64) -> Self {
        ExtReal::Finite(rational_from_int(n))
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            ExtReal::NegInf => false,
            ExtReal::Finite(q) => !q.is_negative(),
            ExtReal::PosInf => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(q) => rational_to_f64(q),
            ExtReal::PosInf => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(q) => write!(f, "{q}"),
            ExtReal::PosInf => f.write_str("+inf"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" | "+∞" => Ok(ExtReal::PosInf),
            "-inf" | "-infinity" | "-∞" => Ok(ExtReal::NegInf),
            other => parse_rational(other).map(ExtReal::Finite),
        }
    }
}

impl serde::Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExtReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Best-effort conversion for display and logarithms.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    let (lo, hi) = ln_enclosure_rational(&q.abs());
    sign * (0.5 * (lo + hi)).exp()
}

/// A closed interval of doubles guaranteed to contain the quantity it describes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "float_or_inf")]
    pub lo: f64,
    #[serde(with = "float_or_inf")]
    pub hi: f64,
}

/// JSON has no infinities: they travel as the strings `"inf"` and `"-inf"`.
mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Raw::Text(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("not a float: {t:?}"))),
        }
    }
}

impl Enclosure {
    pub fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.hi.is_infinite() {
            self.hi
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15e}..{:.15e}", self.lo, self.hi)
    }
}

fn widen(x: f64, magnitude: f64) -> (f64, f64) {
    let err = 8.0 * f64::EPSILON * magnitude + 2.0f64.powi(-52);
    (x - err, x + err)
}

/// Enclosure of `ln n` for a positive integer.
pub fn ln_enclosure_int(n: &BigInt) -> (f64, f64) {
    assert!(n.sign() == Sign::Plus, "logarithm of a nonpositive integer");
    let bits = n.bits();
    if bits <= 64 {
        let m = n.to_u64().unwrap() as f64;
        let x = m.ln();
        return widen(x, x.abs());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap() as f64;
    // n in [top, top+1) * 2^shift, and ln(top+1) - ln(top) < 2^-63
    let x = top.ln() + shift as f64 * std::f64::consts::LN_2;
    widen(x, x.abs())
}

/// Enclosure of `ln q` for a positive rational.
pub fn ln_enclosure_rational(q: &BigRational) -> (f64, f64) {
    let (nl, nh) = ln_enclosure_int(q.numer());
    let (dl, dh) = ln_enclosure_int(q.denom());
    (nl - dh, nh - dl)
}

/// Enclosure of `-ln(value) / ln(norm)` for `value` known to lie in `[lo, hi]`.
/// An interval touching zero yields `+inf` as upper bound.
pub fn exponent_enclosure(lo: &BigRational, hi: &BigRational, norm: &BigInt) -> Option<Enclosure> {
    if norm <= &BigInt::one() || !hi.is_positive() {
        return None;
    }
    let (a, b) = ln_enclosure_int(norm);
    if a <= 0.0 {
        return None;
    }
    let (_, ln_hi_up) = ln_enclosure_rational(hi);
    let num_lo = -ln_hi_up;
    let num_hi = if lo.is_positive() { -ln_enclosure_rational(lo).0 } else { f64::INFINITY };
    let down = 1.0 - 4.0 * f64::EPSILON;
    let up = 1.0 + 4.0 * f64::EPSILON;
    let lo_q = if num_lo >= 0.0 { num_lo / b * down } else { num_lo / a * up };
    let hi_q = if num_hi.is_infinite() {
        f64::INFINITY
    } else if num_hi >= 0.0 {
        num_hi / a * up
    } else {
        num_hi / b * down
    };
    Some(Enclosure { lo: lo_q, hi: hi_q })
}

/// `floor(sqrt(n))` for nonnegative integers.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}
