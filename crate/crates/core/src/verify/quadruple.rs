//! Exponent quadruples `(v, v', w, w')` and the exact relations between them.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::params::{ConstructionParams, FiniteParams};
use crate::error::{ConstructionError, ParseError};
use crate::num::{rational_from_int, ExtReal};

/// `(ω(Θ), ω(ᵗΘ), ω̂(Θ), ω̂(ᵗΘ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentQuadruple {
    pub v: ExtReal,
    pub v_prime: ExtReal,
    pub w: ExtReal,
    pub w_prime: ExtReal,
}

impl ExponentQuadruple {
    pub fn new(v: ExtReal, v_prime: ExtReal, w: ExtReal, w_prime: ExtReal) -> Result<Self, ParseError> {
        let q = ExponentQuadruple { v, v_prime, w, w_prime };
        if q.components().iter().any(|c| match c {
            ExtReal::Finite(x) => !x.is_positive(),
            ExtReal::NegInf => true,
            ExtReal::PosInf => false,
        }) {
            return Err(ParseError::Quadruple(q.to_string()));
        }
        Ok(q)
    }

    pub fn components(&self) -> [&ExtReal; 4] {
        [&self.v, &self.v_prime, &self.w, &self.w_prime]
    }
}

impl fmt::Display for ExponentQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.v_prime, self.w, self.w_prime)
    }
}

impl FromStr for ExponentQuadruple {
    type Err = ParseError;

    /// `"v,v',w,w'"` with rationals or `inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::Quadruple(s.to_string());
        let parts: Vec<&str> = s.trim().trim_start_matches('(').trim_end_matches(')').split(',').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let mut vals = Vec::with_capacity(4);
        for p in parts {
            vals.push(p.trim().parse::<ExtReal>().map_err(|_| bad())?);
        }
        let mut it = vals.into_iter();
        let (v, vp, w, wp) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        ExponentQuadruple::new(v, vp, w, wp).map_err(|_| bad())
    }
}

/// Whether the residual must vanish or only be nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equality,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub residual: ExtReal,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, relation: Relation, residual: ExtReal) -> Self {
        let pass = match relation {
            Relation::Equality => residual == ExtReal::Finite(BigRational::zero()),
            Relation::AtLeast => residual.is_nonnegative(),
        };
        Check { name: name.to_string(), relation, residual, pass }
    }
}

fn fin(x: BigRational) -> ExtReal {
    ExtReal::Finite(x)
}

fn zero() -> ExtReal {
    fin(BigRational::zero())
}

/// `a - b` where `b` is finite; infinite `a` keeps its sign.
fn minus(a: &ExtReal, b: &BigRational) -> ExtReal {
    match a {
        ExtReal::Finite(x) => fin(x - b),
        other => other.clone(),
    }
}

/// `b - a` where `b` is finite.
fn from_minus(b: &BigRational, a: &ExtReal) -> ExtReal {
    match a {
        ExtReal::Finite(x) => fin(b - x),
        ExtReal::PosInf => ExtReal::NegInf,
        ExtReal::NegInf => ExtReal::PosInf,
    }
}

/// Residual of `a ≥ +∞`: 0 when `a = +∞`, `-∞` otherwise.
fn at_least_infinity(a: &ExtReal) -> ExtReal {
    if *a == ExtReal::PosInf {
        zero()
    } else {
        ExtReal::NegInf
    }
}

/// `w' − (w−1)/w`; for `w = +∞` the expected value is `w' = 1`.
pub fn check_jarnik(q: &ExponentQuadruple) -> Check {
    let one = BigRational::one();
    let expected = match &q.w {
        ExtReal::Finite(w) => (w - &one) / w,
        _ => one,
    };
    Check::new("jarnik: w' = (w-1)/w", Relation::Equality, minus(&q.w_prime, &expected))
}

/// `v(w−1)/(v+w) ≤ v' ≤ (v−w+1)/w`, read as `w−1 ≤ v' ≤ +∞` when
/// `w < v = +∞` and as `v = v' = +∞` when `w = +∞`.
pub fn check_refined_transference(q: &ExponentQuadruple) -> [Check; 2] {
    let one = BigRational::one();
    let (lo, hi) = match (&q.v, &q.w) {
        (_, ExtReal::PosInf) => (at_least_infinity(&q.v_prime), at_least_infinity(&q.v)),
        (ExtReal::PosInf, ExtReal::Finite(w)) => (minus(&q.v_prime, &(w - &one)), ExtReal::PosInf),
        (ExtReal::Finite(v), ExtReal::Finite(w)) => {
            (minus(&q.v_prime, &(v * (w - &one) / (v + w))), from_minus(&((v - w + &one) / w), &q.v_prime))
        }
        _ => (ExtReal::NegInf, ExtReal::NegInf),
    };
    [
        Check::new("refined lower: v' >= v(w-1)/(v+w)", Relation::AtLeast, lo),
        Check::new("refined upper: v' <= (v-w+1)/w", Relation::AtLeast, hi),
    ]
}

/// `v/(v+2) ≤ v' ≤ (v−1)/2`, with limits `1 ≤ v' ≤ +∞` at `v = +∞`.
pub fn check_khintchine(q: &ExponentQuadruple) -> [Check; 2] {
    let one = BigRational::one();
    let two = rational_from_int(2);
    let (lo, hi) = match &q.v {
        ExtReal::Finite(v) => (minus(&q.v_prime, &(v / (v + &two))), from_minus(&((v - &one) / &two), &q.v_prime)),
        ExtReal::PosInf => (minus(&q.v_prime, &one), ExtReal::PosInf),
        ExtReal::NegInf => (ExtReal::NegInf, ExtReal::NegInf),
    };
    [
        Check::new("khintchine lower: v' >= v/(v+2)", Relation::AtLeast, lo),
        Check::new("khintchine upper: v' <= (v-1)/2", Relation::AtLeast, hi),
    ]
}

/// `w ≥ 2`, `v ≥ w(w−1)`, `1/2 ≤ w' ≤ 1` and `v' ≥ w'²/(1−w')`.
pub fn check_spectrum(q: &ExponentQuadruple) -> [Check; 5] {
    let one = BigRational::one();
    let two = rational_from_int(2);
    let half = one.clone() / &two;
    let w_bound = minus(&q.w, &two);
    let v_bound = match &q.w {
        ExtReal::Finite(w) => minus(&q.v, &(w * (w - &one))),
        _ => at_least_infinity(&q.v),
    };
    let wp_lower = minus(&q.w_prime, &half);
    let wp_upper = from_minus(&one, &q.w_prime);
    let vp_bound = match &q.w_prime {
        ExtReal::Finite(wp) if wp < &one => minus(&q.v_prime, &(wp * wp / (&one - wp))),
        _ => at_least_infinity(&q.v_prime),
    };
    [
        Check::new("spectrum: w >= 2", Relation::AtLeast, w_bound),
        Check::new("spectrum: v >= w(w-1)", Relation::AtLeast, v_bound),
        Check::new("spectrum: w' >= 1/2", Relation::AtLeast, wp_lower),
        Check::new("spectrum: w' <= 1", Relation::AtLeast, wp_upper),
        Check::new("spectrum: v' >= w'^2/(1-w')", Relation::AtLeast, vp_bound),
    ]
}

/// All relations a quadruple must satisfy.
pub fn check_all(q: &ExponentQuadruple) -> Vec<Check> {
    let mut out = vec![check_jarnik(q)];
    out.extend(check_refined_transference(q));
    out.extend(check_khintchine(q));
    out.extend(check_spectrum(q));
    out
}

/// `((w−1+τ1)/τ0, (w−1)/σ, w, (w−1)/w)` for finite parameters, and the
/// corresponding limits in the infinite modes.
pub fn predict_quadruple(params: &ConstructionParams) -> Result<ExponentQuadruple, ConstructionError> {
    let one = BigRational::one();
    let q = match params {
        ConstructionParams::Finite(p) => {
            p.validate_weak()?;
            let FiniteParams { w, tau0, tau1, sigma } = p;
            ExponentQuadruple {
                v: fin((w - &one + tau1) / tau0),
                v_prime: fin((w - &one) / sigma),
                w: fin(w.clone()),
                w_prime: fin((w - &one) / w),
            }
        }
        ConstructionParams::VInfinite { w, v_prime } => {
            params.validate()?;
            ExponentQuadruple {
                v: ExtReal::PosInf,
                v_prime: v_prime.clone(),
                w: fin(w.clone()),
                w_prime: fin((w - &one) / w),
            }
        }
        ConstructionParams::AllInfinite => {
            ExponentQuadruple { v: ExtReal::PosInf, v_prime: ExtReal::PosInf, w: ExtReal::PosInf, w_prime: fin(one) }
        }
    };
    Ok(q)
}

/// Exponents from the proofs that no foreign triple does better:
/// `λ = max(1/(w−1+τ0), (σ−τ0)/σ)` and `μ = max(σ/((w−1)τ0), (w−1+τ0)/τ0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(with = "crate::serde_rational")]
    pub lambda: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub mu: BigRational,
}

pub fn diagnostics(p: &FiniteParams) -> Diagnostics {
    let one = BigRational::one();
    let FiniteParams { w, tau0, sigma, .. } = p;
    let lambda = (&one / (w - &one + tau0)).max((sigma - tau0) / sigma);
    let mu = (sigma / ((w - &one) * tau0)).max((w - &one + tau0) / tau0);
    Diagnostics { lambda, mu }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn quad(s: &str) -> ExponentQuadruple {
        s.parse().unwrap()
    }

    #[test]
    fn jarnik_examples() {
        assert!(check_jarnik(&quad("5,1,2,1/2")).pass);
        let c = check_jarnik(&quad("inf,inf,inf,1"));
        assert_eq!(c.residual, fin(q("0")));
        let c = check_jarnik(&quad("6,1,3,1/2"));
        assert_eq!(c.residual, fin(q("-1/6")));
        assert!(!c.pass);
    }

    #[test]
    fn refined_examples() {
        let [lo, hi] = check_refined_transference(&quad("6,4/3,3,2/3"));
        assert_eq!((lo.residual, hi.residual), (fin(q("0")), fin(q("0"))));
        let [lo, hi] = check_refined_transference(&quad("5,6/5,2,1/2"));
        assert_eq!(lo.residual, fin(q("6/5") - q("5/7")));
        assert_eq!(hi.residual, fin(q("2") - q("6/5")));
        let [lo, hi] = check_refined_transference(&quad("inf,2,3,2/3"));
        assert_eq!(lo.residual, fin(q("0")));
        assert_eq!(hi.residual, ExtReal::PosInf);
        let [_, hi] = check_refined_transference(&quad("6,3,3,2/3"));
        assert!(!hi.pass);
        let [lo, hi] = check_refined_transference(&quad("inf,inf,inf,1"));
        assert!(lo.pass && hi.pass);
        let [lo, _] = check_refined_transference(&quad("inf,5,inf,1"));
        assert!(!lo.pass);
    }

    #[test]
    fn khintchine_examples() {
        let [lo, hi] = check_khintchine(&quad("6,4/3,3,2/3"));
        assert_eq!(lo.residual, fin(q("4/3") - q("6/8")));
        assert_eq!(hi.residual, fin(q("5/2") - q("4/3")));
        let [lo, hi] = check_khintchine(&quad("5,6/5,2,1/2"));
        assert!(lo.pass && hi.pass);
    }

    #[test]
    fn spectrum_examples() {
        let c = check_spectrum(&quad("6,4/3,3,2/3"));
        assert_eq!(c[1].residual, fin(q("0")));
        assert_eq!(c[4].residual, fin(q("0")));
        assert!(c.iter().all(|c| c.pass));
        let c = check_spectrum(&quad("3,1,3/2,1/3"));
        assert!(!c[0].pass);
    }

    #[test]
    fn parsing() {
        assert!("6,4/3,3".parse::<ExponentQuadruple>().is_err());
        assert!("6,0,3,2/3".parse::<ExponentQuadruple>().is_err());
        assert!("(6, 4/3, 3, 2/3)".parse::<ExponentQuadruple>().is_ok());
        assert_eq!(quad("inf,1,2,1/2").v, ExtReal::PosInf);
    }

    #[test]
    fn predictions() {
        let p = ConstructionParams::finite(q("3"), q("1/2"), q("1"), q("3/2"));
        assert_eq!(predict_quadruple(&p).unwrap(), quad("6,4/3,3,2/3"));
        let p = ConstructionParams::finite(q("2"), q("1/3"), q("2/3"), q("5/6"));
        assert_eq!(predict_quadruple(&p).unwrap(), quad("5,6/5,2,1/2"));
        // extremal families still have a prediction
        let p = ConstructionParams::finite(q("2"), q("1/2"), q("1/2"), q("1"));
        assert_eq!(predict_quadruple(&p).unwrap(), quad("3,1,2,1/2"));
        let p = ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("4")) };
        assert!(check_all(&predict_quadruple(&p).unwrap()).iter().all(|c| c.pass));
        assert!(check_all(&predict_quadruple(&ConstructionParams::AllInfinite).unwrap()).iter().all(|c| c.pass));
    }

    #[test]
    fn diagnostics_reference() {
        let d = diagnostics(&FiniteParams::new(q("3"), q("1/2"), q("1"), q("3/2")));
        assert_eq!(d.lambda, q("2/3"));
        assert_eq!(d.mu, q("5"));
    }
}
