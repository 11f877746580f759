//! Chains of rational points on a fixed line, and dually chains of rational
//! lines through a fixed point, with prescribed heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::basis::reduced_line_basis;
use crate::error::ConstructionError;
use crate::geometry::{add, dot, scale, sup_norm, wedge, IntegerTriple, ProjectiveLine, ProjectivePoint, Vec3};
use crate::num::{ceil_int, rational_from_int};

fn precondition(msg: String) -> ConstructionError {
    ConstructionError::PreconditionViolated(msg)
}

/// Checks `q1 ≥ 14 q0`, `q0 q1 ≥ 4 h` and `q_{k+1} ≥ 3 q_k`.
fn check_growth(
    q0: &BigInt,
    h: &BigInt,
    targets: &[BigRational],
    names: (&str, &str),
) -> Result<(), ConstructionError> {
    let (q, hname) = names;
    if targets.is_empty() {
        return Err(precondition("empty target sequence".into()));
    }
    let q0r = rational_from_int(q0.clone());
    if targets[0] < rational_from_int(14) * &q0r {
        return Err(precondition(format!("{q}1 >= 14 {q}0 fails ({} < 14·{q0})", targets[0])));
    }
    if &q0r * &targets[0] < rational_from_int(4) * rational_from_int(h.clone()) {
        return Err(precondition(format!("{q}0·{q}1 >= 4 {hname} fails")));
    }
    for k in 1..targets.len() {
        if targets[k] < rational_from_int(3) * &targets[k - 1] {
            return Err(precondition(format!("{q}{} >= 3 {q}{} fails", k + 1, k)));
        }
    }
    Ok(())
}

/// Coefficients `(m, n)` of `p = m·a + n·b`, read off `a ∧ b = ±Δ` by Cramer.
fn coordinates(p: &Vec3, a: &Vec3, b: &Vec3) -> (BigInt, BigInt) {
    let ab = wedge(a, b);
    let i = (0..3).find(|&i| !ab[i].is_zero()).expect("independent basis");
    let pb = wedge(p, b);
    let ap = wedge(a, p);
    (&pb[i] / &ab[i], &ap[i] / &ab[i])
}

/// `(e, f)` with `m f − n e = 1` and `|f|` minimal, ties toward positive `f`.
fn bezout_min_f(m: &BigInt, n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        // m = ±1
        return (BigInt::zero(), m.clone());
    }
    let an = n.abs();
    if an.is_one() {
        return (-n, BigInt::zero());
    }
    let eg = m.mod_floor(&an).extended_gcd(&an);
    let f0 = eg.x.mod_floor(&an);
    let f1 = &f0 - &an;
    let f = if f1.abs() < f0 { f1 } else { f0 };
    let e = (m * &f - 1) / n;
    (e, f)
}

/// Points `P_1 … P_l` on `line` with `H(P_k) ≈ q_k`, starting from `p0` on it.
///
/// Follows the continued-fraction recipe: write `P0 = mA + nB` in a reduced
/// basis, complete it with `eA + fB`, set `P1 = g1 P0 + eA + fB` with
/// `g1 = ⌈q1/q0⌉`, then `P_k = g_k P_{k-1} + P_{k-2}` with
/// `g_k = ⌈q_k / ‖P_{k-1}‖⌉`.
pub fn point_chain(
    line: &ProjectiveLine,
    p0: &ProjectivePoint,
    targets: &[BigRational],
) -> Result<Vec<ProjectivePoint>, ConstructionError> {
    chain(line.coords(), p0.coords(), targets, ("q", "h")).map(|v| v.into_iter().map(ProjectivePoint).collect())
}

/// Lines `Δ_1 … Δ_l` through `point` with `H(Δ_k) ≈ h_k`, starting from
/// `delta0` through it. This is the point chain with the roles of points
/// and lines exchanged.
pub fn line_chain(
    point: &ProjectivePoint,
    delta0: &ProjectiveLine,
    targets: &[BigRational],
) -> Result<Vec<ProjectiveLine>, ConstructionError> {
    chain(point.coords(), delta0.coords(), targets, ("h", "q")).map(|v| v.into_iter().map(ProjectiveLine).collect())
}

fn chain(
    carrier: &Vec3,
    start: &Vec3,
    targets: &[BigRational],
    names: (&str, &str),
) -> Result<Vec<IntegerTriple>, ConstructionError> {
    if !dot(carrier, start).is_zero() {
        return Err(precondition("starting element is not incident to the carrier".into()));
    }
    let carrier_t = IntegerTriple::normalize(carrier).map_err(|e| precondition(e.to_string()))?;
    let h = carrier_t.norm();
    let start_t = IntegerTriple::normalize(start).map_err(|e| precondition(e.to_string()))?;
    let q0 = start_t.norm();
    check_growth(&q0, &h, targets, names)?;

    let basis = reduced_line_basis(&ProjectiveLine(carrier_t));
    let (a, b) = (basis.a.coords(), basis.b.coords());
    let p0 = start_t.coords().clone();
    let (m, n) = coordinates(&p0, a, b);
    let (e, f) = bezout_min_f(&m, &n);
    debug_assert!((&m * &f - &n * &e).is_one());

    let g1 = ceil_int(&(&targets[0] / rational_from_int(q0)));
    let p1 = add(&scale(&g1, &p0), &add(&scale(&e, a), &scale(&f, b)));
    let mut raw = vec![p0, p1];
    for q in &targets[1..] {
        let prev = raw.last().unwrap();
        let g = ceil_int(&(q / rational_from_int(sup_norm(prev))));
        let next = add(&scale(&g, prev), &raw[raw.len() - 2]);
        raw.push(next);
    }
    raw[1..].iter().map(|v| IntegerTriple::normalize(v).map_err(|e| precondition(e.to_string()))).collect()
}

/// Outcome of one explicit chain inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub what: String,
    /// `rhs - lhs`; the inequality holds iff this is nonnegative.
    pub slack: BigRational,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        !self.slack.is_negative()
    }
}

/// Heights within a factor 2 of the targets, pairwise distances within
/// `[1/32, 16] · h/(q_k q_{k+1})` and the Liouville bound `h/(H H')`.
/// `q[0]` is the height of the starting element; `elems[0]` is that element.
pub fn chain_checks(
    carrier_height: &BigInt,
    elems: &[IntegerTriple],
    q: &[BigRational],
    dist: fn(&Vec3, &Vec3) -> BigRational,
    label: &str,
) -> Vec<ChainCheck> {
    let h = rational_from_int(carrier_height.clone());
    let two = rational_from_int(2);
    let mut out = Vec::new();
    for (k, (p, qk)) in elems.iter().zip(q).enumerate() {
        let hp = rational_from_int(p.norm());
        out.push(ChainCheck { what: format!("{label}{k} height >= q/2"), slack: &hp - qk / &two });
        out.push(ChainCheck { what: format!("{label}{k} height <= 2q"), slack: &two * qk - &hp });
    }
    for k in 0..elems.len() {
        for kp in k + 1..elems.len() {
            let d = dist(elems[k].coords(), elems[kp].coords());
            let base = &h / (&q[k] * &q[k + 1]);
            out.push(ChainCheck {
                what: format!("d({label}{k},{label}{kp}) >= h/(32 q q')"),
                slack: &d - &base / rational_from_int(32),
            });
            out.push(ChainCheck {
                what: format!("d({label}{k},{label}{kp}) <= 16 h/(q q')"),
                slack: &base * rational_from_int(16) - &d,
            });
            let liouville = &h / rational_from_int(elems[k].norm() * elems[kp].norm());
            out.push(ChainCheck { what: format!("d({label}{k},{label}{kp}) Liouville"), slack: &d - liouville });
        }
    }
    out
}

/// `‖a ∧ b‖ / (‖a‖‖b‖)` on the stored coordinates, for points or lines alike.
pub fn raw_dist(a: &Vec3, b: &Vec3) -> BigRational {
    BigRational::new(sup_norm(&wedge(a, b)), sup_norm(a) * sup_norm(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{dist_points, vec3};

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint(IntegerTriple::from_i64(x, y, z).unwrap())
    }

    fn ln(x: i64, y: i64, z: i64) -> ProjectiveLine {
        ProjectiveLine(IntegerTriple::from_i64(x, y, z).unwrap())
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rational_from_int(x)).collect()
    }

    #[test]
    fn bezout_choice() {
        let (e, f) = bezout_min_f(&BigInt::from(3), &BigInt::from(7));
        assert_eq!((e.clone(), f.clone()), (BigInt::from(-1), BigInt::from(-2)));
        assert!((BigInt::from(3) * f - BigInt::from(7) * e).is_one());
        // tie |f| = |n|/2 resolves to positive f
        let (_, f) = bezout_min_f(&BigInt::from(1), &BigInt::from(2));
        assert_eq!(f, BigInt::from(1));
        assert_eq!(bezout_min_f(&BigInt::from(5), &BigInt::from(-1)), (BigInt::from(1), BigInt::zero()));
        assert_eq!(bezout_min_f(&BigInt::from(-1), &BigInt::zero()), (BigInt::zero(), BigInt::from(-1)));
    }

    #[test]
    fn point_chain_reference() {
        let l = ln(1, 1, -1);
        let p0 = pt(1, 0, 1);
        let ps = point_chain(&l, &p0, &qs(&[14])).unwrap();
        assert_eq!(ps[0].coords(), &vec3(14, 1, 15));
        assert_eq!(dist_points(&p0, &ps[0]), BigRational::new(1.into(), 15.into()));
        let ps = point_chain(&l, &p0, &qs(&[14, 42])).unwrap();
        assert_eq!(ps[1].coords(), &vec3(43, 3, 46));
        assert!(ps.iter().all(|p| p.lies_on(&l)));
    }

    #[test]
    fn point_chain_preconditions() {
        let l = ln(1, 1, -1);
        let p0 = pt(1, 0, 1);
        let e = point_chain(&l, &p0, &qs(&[10])).unwrap_err();
        assert!(e.to_string().contains("14"), "{e}");
        assert!(point_chain(&l, &p0, &qs(&[14, 30])).is_err());
        assert!(point_chain(&l, &pt(1, 1, 1), &qs(&[14])).is_err());
    }

    #[test]
    fn line_chain_is_transposed_point_chain() {
        let p = pt(1, 0, 1);
        let d0 = ln(1, 1, -1);
        let lines = line_chain(&p, &d0, &qs(&[14])).unwrap();
        assert_eq!(lines[0].coords(), &vec3(14, 13, -14));
        let lines = line_chain(&p, &d0, &qs(&[14, 42])).unwrap();
        let points = point_chain(&ProjectiveLine(p.0.clone()), &ProjectivePoint(d0.0.clone()), &qs(&[14, 42])).unwrap();
        for (l, q) in lines.iter().zip(&points) {
            assert_eq!(l.coords(), q.coords());
            assert!(p.lies_on(l));
        }
        assert!(line_chain(&p, &d0, &qs(&[13])).is_err());
    }

    #[test]
    fn explicit_bounds_hold_on_long_chains() {
        let l = ln(5, 3, -7);
        let p0 = ProjectivePoint(IntegerTriple::normalize(&vec3(7, 0, 5)).unwrap());
        assert!(p0.lies_on(&l));
        let targets = qs(&[200, 700, 2500, 9000, 40000]);
        let ps = point_chain(&l, &p0, &targets).unwrap();
        let mut elems = vec![p0.0.clone()];
        elems.extend(ps.iter().map(|p| p.0.clone()));
        let mut q = vec![rational_from_int(p0.height())];
        q.extend(targets);
        for c in chain_checks(&l.height(), &elems, &q, raw_dist, "P") {
            assert!(c.holds(), "{c:?}");
        }
    }
}
