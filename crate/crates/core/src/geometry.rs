//! Exact projective primitives: primitive integer triples, wedge products,
//! projective distances and the two semi-norms `L` and `M` with certified
//! error intervals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, ParseError};
use crate::target::TargetPoint;

/// A raw integer 3-vector, not necessarily primitive.
pub type Vec3 = [BigInt; 3];

pub fn vec3(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Vec3 {
    [x.into(), y.into(), z.into()]
}

/// Sup norm `max(|x|, |y|, |z|)`.
pub fn sup_norm(v: &Vec3) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap()
}

/// Cross product. Zero iff the arguments are proportional.
pub fn wedge(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

pub fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn is_zero(v: &Vec3) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale(k: &BigInt, v: &Vec3) -> Vec3 {
    [k * &v[0], k * &v[1], k * &v[2]]
}

pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// Primitive integer triple with its first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerTriple(Vec3);

impl IntegerTriple {
    /// The unique primitive, sign-normalized triple proportional to `raw`.
    pub fn normalize(raw: &Vec3) -> Result<Self, GeometryError> {
        let g = raw[0].gcd(&raw[1]).gcd(&raw[2]);
        if g.is_zero() {
            return Err(GeometryError::ZeroTriple);
        }
        let lead_negative = raw.iter().find(|c| !c.is_zero()).unwrap().is_negative();
        let g = if lead_negative { -g } else { g };
        Ok(IntegerTriple([&raw[0] / &g, &raw[1] / &g, &raw[2] / &g]))
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self, GeometryError> {
        Self::normalize(&vec3(x, y, z))
    }

    /// Accepts `raw` only when it is already primitive and sign-normalized.
    pub fn try_exact(raw: Vec3) -> Option<Self> {
        let t = Self::normalize(&raw).ok()?;
        (t.0 == raw).then_some(t)
    }

    pub fn coords(&self) -> &Vec3 {
        &self.0
    }

    pub fn x(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn y(&self) -> &BigInt {
        &self.0[1]
    }

    pub fn z(&self) -> &BigInt {
        &self.0[2]
    }

    pub fn norm(&self) -> BigInt {
        sup_norm(&self.0)
    }

    pub fn into_inner(self) -> Vec3 {
        self.0
    }
}

impl fmt::Display for IntegerTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for IntegerTriple {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Triple(s.to_string());
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v: Vec<BigInt> = Vec::with_capacity(3);
        for p in parts {
            v.push(BigInt::from_str(p).map_err(|_| bad())?);
        }
        let raw: Vec3 = [v[0].clone(), v[1].clone(), v[2].clone()];
        IntegerTriple::normalize(&raw).map_err(|_| bad())
    }
}

impl Serialize for IntegerTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: [String; 3] = [self.0[0].to_string(), self.0[1].to_string(), self.0[2].to_string()];
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerTriple {
    /// Deserialization keeps the stored coordinates verbatim (after checking
    /// they are not all zero) so that tampered documents can be detected by
    /// the verifier instead of being silently repaired.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = <[String; 3]>::deserialize(d)?;
        let mut v = Vec::with_capacity(3);
        for s in &strs {
            v.push(BigInt::from_str(s).map_err(serde::de::Error::custom)?);
        }
        let raw: Vec3 = [v[0].clone(), v[1].clone(), v[2].clone()];
        if is_zero(&raw) {
            return Err(serde::de::Error::custom("zero triple"));
        }
        Ok(IntegerTriple(raw))
    }
}

impl IntegerTriple {
    /// Whether the stored coordinates satisfy the primitive/sign invariant.
    /// Only triples read back from documents can fail this.
    pub fn is_canonical(&self) -> bool {
        IntegerTriple::normalize(&self.0).map(|t| t == *self).unwrap_or(false)
    }
}

/// Rational point of the projective plane, `(x:y:z)`, affine image `(x/z, y/z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(pub IntegerTriple);

/// Rational line `rx + sy + tz = 0`, stored by its coefficient triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectiveLine(pub IntegerTriple);

impl ProjectivePoint {
    pub fn height(&self) -> BigInt {
        self.0.norm()
    }

    pub fn coords(&self) -> &Vec3 {
        self.0.coords()
    }

    /// Affine coordinates `(x/z, y/z)`, `None` at infinity.
    pub fn affine(&self) -> Option<(BigRational, BigRational)> {
        let [x, y, z] = self.coords();
        if z.is_zero() {
            return None;
        }
        Some((BigRational::new(x.clone(), z.clone()), BigRational::new(y.clone(), z.clone())))
    }

    pub fn lies_on(&self, line: &ProjectiveLine) -> bool {
        dot(self.coords(), line.coords()).is_zero()
    }
}

impl ProjectiveLine {
    pub fn height(&self) -> BigInt {
        self.0.norm()
    }

    pub fn coords(&self) -> &Vec3 {
        self.0.coords()
    }

    pub fn passes_through(&self, p: &ProjectivePoint) -> bool {
        p.lies_on(self)
    }
}

fn wedge_distance(a: &Vec3, b: &Vec3) -> BigRational {
    let w = wedge(a, b);
    BigRational::new(sup_norm(&w), sup_norm(a) * sup_norm(b))
}

/// Projective distance `‖P∧P'‖ / (‖P‖‖P'‖)`.
pub fn dist_points(p: &ProjectivePoint, q: &ProjectivePoint) -> BigRational {
    wedge_distance(p.coords(), q.coords())
}

/// Distance between two lines, same formula on coefficient triples.
pub fn dist_lines(a: &ProjectiveLine, b: &ProjectiveLine) -> BigRational {
    wedge_distance(a.coords(), b.coords())
}

/// `|rx + sy + tz| / (‖P‖‖Δ‖)`; zero iff the point lies on the line.
pub fn dist_point_line(p: &ProjectivePoint, line: &ProjectiveLine) -> BigRational {
    BigRational::new(dot(p.coords(), line.coords()).abs(), p.height() * line.height())
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInterval {
    #[serde(with = "crate::serde_rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub hi: BigRational,
}

impl ErrorInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        ErrorInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        ErrorInterval { lo: x.clone(), hi: x }
    }

    /// `|c| ± e`, clamped below at zero.
    fn around_abs(c: &BigRational, e: &BigRational) -> Self {
        let a = c.abs();
        let lo = &a - e;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        ErrorInterval { lo, hi: a + e }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_exact_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn max(&self, other: &ErrorInterval) -> ErrorInterval {
        ErrorInterval { lo: (&self.lo).max(&other.lo).clone(), hi: (&self.hi).max(&other.hi).clone() }
    }
}

fn int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Value of `x·a + y·b + z` at an exact point `(a, b)`, signed.
pub fn linear_form_at(v: &Vec3, a: &BigRational, b: &BigRational) -> BigRational {
    int(&v[0]) * a + int(&v[1]) * b + int(&v[2])
}

/// `max(|z·a − x|, |z·b − y|)` at an exact point `(a, b)`.
pub fn sim_form_at(v: &Vec3, a: &BigRational, b: &BigRational) -> BigRational {
    let z = int(&v[2]);
    let dx = (&z * a - int(&v[0])).abs();
    let dy = (&z * b - int(&v[1])).abs();
    dx.max(dy)
}

/// `L(X) = |xα + yβ + z|` over the target's uncertainty box.
pub fn seminorm_l(v: &Vec3, target: &TargetPoint) -> ErrorInterval {
    let c = linear_form_at(v, &target.alpha, &target.beta);
    let e = int(&(v[0].abs() + v[1].abs())) * &target.radius;
    ErrorInterval::around_abs(&c, &e)
}

/// `M(X) = max(|zα − x|, |zβ − y|)` over the target's uncertainty box.
pub fn seminorm_m(v: &Vec3, target: &TargetPoint) -> ErrorInterval {
    let z = int(&v[2]);
    let e = z.abs() * &target.radius;
    let dx = &z * &target.alpha - int(&v[0]);
    let dy = &z * &target.beta - int(&v[1]);
    ErrorInterval::around_abs(&dx, &e).max(&ErrorInterval::around_abs(&dy, &e))
}
