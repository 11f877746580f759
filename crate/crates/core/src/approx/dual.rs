//! Wedge duals of consecutive best approximations and the exact bounds
//! they satisfy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::search::ApproxRecord;
use super::trace::ExponentTrace;
use super::Which;
use crate::error::GeometryError;
use crate::geometry::{
    linear_form_at, sim_form_at, sup_norm, wedge, IntegerTriple, ProjectiveLine, ProjectivePoint, Vec3,
};
use crate::target::TargetPoint;

fn normalized_wedge(a: &IntegerTriple, b: &IntegerTriple) -> Result<IntegerTriple, GeometryError> {
    IntegerTriple::normalize(&wedge(a.coords(), b.coords())).map_err(|_| GeometryError::ProportionalTriples)
}

/// `Q_n = Δ_n ∧ Δ_{n+1}`, the intersection of two consecutive lines.
pub fn dual_points_from_lines(a: &IntegerTriple, b: &IntegerTriple) -> Result<ProjectivePoint, GeometryError> {
    normalized_wedge(a, b).map(ProjectivePoint)
}

/// `D_n = P_n ∧ P_{n+1}`, the line through two consecutive points.
pub fn dual_lines_from_points(a: &IntegerTriple, b: &IntegerTriple) -> Result<ProjectiveLine, GeometryError> {
    normalized_wedge(a, b).map(ProjectiveLine)
}

/// One exact inequality `lhs ≤ rhs`, stored as `rhs − lhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub name: String,
    /// Index `n` of the first record of the pair, from 1.
    pub index: usize,
    #[serde(with = "crate::serde_rational")]
    pub slack: BigRational,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        !self.slack.is_negative()
    }
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn check(out: &mut Vec<WitnessCheck>, index: usize, name: &str, lhs: BigRational, rhs: BigRational) {
    out.push(WitnessCheck { name: name.to_string(), index, slack: rhs - lhs });
}

/// Bounds on `Q_n` for consecutive line records, evaluated exactly at the
/// target center on the raw wedge.
pub fn line_pair_bounds(
    target: &TargetPoint,
    index: usize,
    a: &ApproxRecord,
    b: &ApproxRecord,
) -> Result<Vec<WitnessCheck>, GeometryError> {
    let (al, be) = (&target.alpha, &target.beta);
    let q: Vec3 = wedge(a.triple.coords(), b.triple.coords());
    if q.iter().all(|c| c.sign() == num_bigint::Sign::NoSign) {
        return Err(GeometryError::ProportionalTriples);
    }
    let (h0, h1) = (int(a.triple.norm()), int(b.triple.norm()));
    let l0 = linear_form_at(a.triple.coords(), al, be).abs();
    let l1 = linear_form_at(b.triple.coords(), al, be).abs();
    let two = int(BigInt::from(2));
    let mut out = Vec::new();
    let mid = &h1 * &l0 + &h0 * &l1;
    check(&mut out, index, "M(Q) <= h1 L0 + h0 L1", sim_form_at(&q, al, be), mid.clone());
    check(&mut out, index, "h1 L0 + h0 L1 <= 2 h1 L0", mid, &two * &h1 * &l0);
    check(&mut out, index, "|Q| <= 2 h0 h1", int(sup_norm(&q)), &two * &h0 * &h1);
    Ok(out)
}

/// Bounds on `D_n` for consecutive point records, at the target center.
pub fn point_pair_bounds(
    target: &TargetPoint,
    index: usize,
    a: &ApproxRecord,
    b: &ApproxRecord,
) -> Result<Vec<WitnessCheck>, GeometryError> {
    let (al, be) = (&target.alpha, &target.beta);
    let d: Vec3 = wedge(a.triple.coords(), b.triple.coords());
    if d.iter().all(|c| c.sign() == num_bigint::Sign::NoSign) {
        return Err(GeometryError::ProportionalTriples);
    }
    let (q0, q1) = (int(a.triple.norm()), int(b.triple.norm()));
    let m0 = sim_form_at(a.triple.coords(), al, be);
    let m1 = sim_form_at(b.triple.coords(), al, be);
    let factor = BigRational::one() + al.abs();
    let two = int(BigInt::from(2));
    let mut out = Vec::new();
    let mid = &factor * (&q1 * &m0 + &q0 * &m1);
    check(&mut out, index, "|D| <= (1+|a|)(q1 M0 + q0 M1)", int(sup_norm(&d)), mid.clone());
    check(&mut out, index, "(1+|a|)(q1 M0 + q0 M1) <= 2(1+|a|) q1 M0", mid, &two * &factor * &q1 * &m0);
    check(&mut out, index, "L(D) <= 2 M0 M1", linear_form_at(&d, al, be).abs(), &two * &m0 * &m1);
    Ok(out)
}

/// Every consecutive pair of a trace, with the bounds matching its semi-norm.
pub fn trace_witnesses(target: &TargetPoint, trace: &ExponentTrace) -> Result<Vec<WitnessCheck>, GeometryError> {
    let mut out = Vec::new();
    for (i, p) in trace.records.windows(2).enumerate() {
        let checks = match trace.which {
            Which::L => line_pair_bounds(target, i + 1, &p[0], &p[1])?,
            Which::M => point_pair_bounds(target, i + 1, &p[0], &p[1])?,
        };
        out.extend(checks);
    }
    Ok(out)
}
