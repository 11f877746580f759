//! Certified representations of the target point Θ = (α, β): an exact
//! rational center and a radius bounding the distance (in each coordinate)
//! to the true point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::run::ConstructionRun;
use crate::error::{Error, ParseError, TargetError};
use crate::num::{is_perfect_square, isqrt, parse_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConstructedRun,
    Algebraic,
    ContinuedFraction,
    Literal,
}

/// Θ is known to satisfy `|α − alpha| ≤ radius` and `|β − beta| ≤ radius`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetPoint {
    #[serde(with = "crate::serde_rational")]
    pub alpha: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub beta: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub radius: BigRational,
    pub provenance: Provenance,
}

impl TargetPoint {
    pub fn new(
        alpha: BigRational,
        beta: BigRational,
        radius: BigRational,
        provenance: Provenance,
    ) -> Result<Self, TargetError> {
        if radius.is_negative() {
            return Err(TargetError::NegativeRadius);
        }
        Ok(TargetPoint { alpha, beta, radius, provenance })
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// Half side of a centered box containing every admissible Θ.
    pub fn box_bound(&self) -> BigRational {
        self.alpha.abs().max(self.beta.abs()) + &self.radius
    }
}

impl fmt::Display for TargetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = crate::num::rational_to_f64(&self.alpha);
        let b = crate::num::rational_to_f64(&self.beta);
        let r = crate::num::rational_to_f64(&self.radius);
        write!(f, "({a:.12}, {b:.12}) ± {r:.3e}")
    }
}

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u32).pow(d)
}

/// `(√p − ⌊√p⌋, √q − ⌊√q⌋)` to `digits` decimals.
pub fn target_quadratic(p: u64, q: u64, digits: u32) -> Result<TargetPoint, TargetError> {
    let bp = BigInt::from(p);
    let bq = BigInt::from(q);
    if p == 0 || q == 0 || is_perfect_square(&bp) || is_perfect_square(&bq) || is_perfect_square(&(&bp * &bq)) {
        return Err(TargetError::PerfectSquareInput { p, q });
    }
    let scale = pow10(digits);
    let frac = |n: &BigInt| {
        let s = isqrt(&(n * &scale * &scale));
        BigRational::new(s, scale.clone()) - BigRational::from_integer(isqrt(n))
    };
    Ok(TargetPoint {
        alpha: frac(&bp),
        beta: frac(&bq),
        radius: BigRational::new(BigInt::one(), scale.clone()),
        provenance: Provenance::Algebraic,
    })
}

/// Partial quotients following the Fibonacci word over {1, 2}
/// (substitution 1 → 1 2, 2 → 1), starting 1, 2, 1, 1, 2, 1, 2, 1, ...
pub fn fibonacci_word(len: usize) -> Vec<u32> {
    let mut word = vec![1u32];
    while word.len() < len {
        word = word.iter().flat_map(|&c| if c == 1 { vec![1, 2] } else { vec![1] }).collect();
    }
    word.truncate(len);
    word
}

/// Denominators `q_0 = 1, q_1, …` and numerators of `[0; a_1, a_2, …]`.
pub(crate) fn convergents(quotients: &[u32]) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut p = vec![BigInt::zero()];
    let mut q = vec![BigInt::one()];
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    for &a in quotients {
        let pn = BigInt::from(a) * p.last().unwrap() + &p_prev;
        let qn = BigInt::from(a) * q.last().unwrap() + &q_prev;
        p_prev = p.last().unwrap().clone();
        q_prev = q.last().unwrap().clone();
        p.push(pn);
        q.push(qn);
    }
    (p, q)
}

fn round_to_digits(x: &BigRational, digits: u32) -> BigRational {
    let scale = BigRational::from_integer(pow10(digits));
    (x * &scale).round() / scale
}

/// Target `(α, α²)` with `α = [0; a_1, …]` the Fibonacci-word continued
/// fraction, centered at the convergent of order `depth`. With `digits`
/// the center is further rounded to that many decimals.
pub fn target_fibonacci_cf(depth: usize, digits: Option<u32>) -> Result<TargetPoint, TargetError> {
    if depth < 5 {
        return Err(TargetError::DepthTooSmall(depth));
    }
    let word = fibonacci_word(depth + 1);
    let (p, q) = convergents(&word);
    let c = BigRational::new(p[depth].clone(), q[depth].clone());
    // |α − p_n/q_n| < 1/(q_n q_{n+1})
    let eps = BigRational::new(BigInt::one(), &q[depth] * &q[depth + 1]);
    let two = BigRational::from_integer(2.into());
    let eps_sq = &eps * (&two * c.abs() + &eps);
    let mut radius = eps.clone().max(eps_sq);
    let mut alpha = c.clone();
    let mut beta = &c * &c;
    if let Some(d) = digits {
        let ra = round_to_digits(&alpha, d);
        let rb = round_to_digits(&beta, d);
        if ra != alpha || rb != beta {
            radius += BigRational::new(BigInt::one(), BigInt::from(2) * pow10(d));
            alpha = ra;
            beta = rb;
        }
    }
    Ok(TargetPoint { alpha, beta, radius, provenance: Provenance::ContinuedFraction })
}

/// Target centered at the run point `P_{n,k}` with the tail-bound radius.
pub fn target_from_run(run: &ConstructionRun, n: usize, k: usize) -> Result<TargetPoint, TargetError> {
    run.target_at(n, k)
}

/// Parses the CLI target syntax: `sqrt:p,q`, `fib:depth`,
/// `run:<file>#n,k` or `lit:a,b,radius`.
pub fn parse_target(spec: &str, digits: u32) -> Result<TargetPoint, Error> {
    let bad = || Error::from(ParseError::Target(spec.to_string()));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "sqrt" => {
            let (p, q) = rest.split_once(',').ok_or_else(bad)?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            Ok(target_quadratic(p, q, digits)?)
        }
        "fib" => {
            let depth: usize = rest.trim().parse().map_err(|_| bad())?;
            Ok(target_fibonacci_cf(depth, None)?)
        }
        "run" => {
            let (path, idx) = rest.rsplit_once('#').ok_or_else(bad)?;
            let (n, k) = idx.split_once(',').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            let run = crate::construction::file::read_run(std::path::Path::new(path))?;
            Ok(target_from_run(&run, n, k)?)
        }
        "lit" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let a = parse_rational(parts[0])?;
            let b = parse_rational(parts[1])?;
            let r = parse_rational(parts[2])?;
            Ok(TargetPoint::new(a, b, r, Provenance::Literal)?)
        }
        _ => Err(bad()),
    }
}
