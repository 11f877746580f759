//! Minimal points of `L` and `M` up to a norm bound, found shell by shell.
//!
//! For `L` each pair `(x, y)` only needs the two integers `z` next to
//! `-(xα + yβ)`: any other `z` gives a value at least 1, which never beats the
//! starting bound. For `M` each `z ≥ 1` only needs `x` and `y` next to `zα`
//! and `zβ`, by the same argument. Both kernels keep the center scaled to a
//! common denominator `D` and advance by integer increments.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, SearchError};
use crate::geometry::{seminorm_l, seminorm_m, vec3, ErrorInterval, IntegerTriple};
use crate::target::TargetPoint;

/// Largest supported norm bound.
pub const MAX_HMAX: u64 = 1 << 22;

/// Bits of the fixed-point scale used when the center's denominator is too large.
const FIXED_BITS: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    /// `L(X) = |xα + yβ + z|`, approximation by rational lines.
    L,
    /// `M(X) = max(|zα − x|, |zβ − y|)`, approximation by rational points.
    M,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::L => "L",
            Which::M => "M",
        })
    }
}

impl FromStr for Which {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" | "l" => Ok(Which::L),
            "M" | "m" => Ok(Which::M),
            _ => Err(ParseError::Other(format!("expected L or M, got {s:?}"))),
        }
    }
}

/// One best approximation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxRecord {
    pub triple: IntegerTriple,
    pub norm: u64,
    /// Enclosure of the semi-norm over all admissible Θ.
    pub value: ErrorInterval,
    /// Every nonzero triple of smaller norm has its whole interval above `value.hi`.
    pub certified: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

/// Center scaled by `d`: `α·d = aq·d + ar` with `0 ≤ ar < d`, same for β.
#[derive(Clone, Debug)]
struct Scaled {
    d: i128,
    aq: i128,
    ar: i128,
    bq: i128,
    br: i128,
    /// Bound on `|α − scaled α|`, zero when exact.
    fp_error: BigRational,
}

fn split(v: &BigInt, d: &BigInt) -> (i128, i128) {
    let (q, r) = v.div_mod_floor(d);
    (q.to_i128().unwrap(), r.to_i128().unwrap())
}

impl Scaled {
    fn new(target: &TargetPoint) -> Result<Self, SearchError> {
        let limit = BigRational::from_integer(BigInt::one() << 32u32);
        if target.alpha.abs() >= limit || target.beta.abs() >= limit {
            return Err(SearchError::TargetOutOfRange);
        }
        let lcm = target.alpha.denom().lcm(target.beta.denom());
        let (d, a, b, fp_error) = if lcm.bits() <= FIXED_BITS as u64 {
            let a = (&target.alpha * BigRational::from_integer(lcm.clone())).to_integer();
            let b = (&target.beta * BigRational::from_integer(lcm.clone())).to_integer();
            (lcm, a, b, BigRational::zero())
        } else {
            let d = BigInt::one() << FIXED_BITS;
            let dq = BigRational::from_integer(d.clone());
            let a = (&target.alpha * &dq).round().to_integer();
            let b = (&target.beta * &dq).round().to_integer();
            (d, a, b, BigRational::new(BigInt::one(), BigInt::one() << (FIXED_BITS + 1)))
        };
        let (aq, ar) = split(&a, &d);
        let (bq, br) = split(&b, &d);
        Ok(Scaled { d: d.to_i128().unwrap(), aq, ar, bq, br, fp_error })
    }

    fn a_big(&self) -> BigInt {
        BigInt::from(self.aq) * self.d + self.ar
    }

    fn b_big(&self) -> BigInt {
        BigInt::from(self.bq) * self.d + self.br
    }
}

/// Best candidate of one shell: scaled value and the sign-normalized triple.
type Slot = (u128, [i64; 3]);

const EMPTY: Slot = (u128::MAX, [0; 3]);

#[inline]
fn better(a: &Slot, b: &Slot) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

#[inline]
fn offer(best: &mut [Slot], n: usize, cand: Slot) {
    if better(&cand, &best[n]) {
        best[n] = cand;
    }
}

fn merge(mut a: Vec<Slot>, b: Vec<Slot>) -> Vec<Slot> {
    for (x, y) in a.iter_mut().zip(b) {
        if better(&y, x) {
            *x = y;
        }
    }
    a
}

/// Shell minima of `L` over `x` in `xs`.
fn l_shells(s: &Scaled, h: i64, xs: std::ops::Range<i64>, best: &mut [Slot]) {
    let d = BigInt::from(s.d);
    let (a, b) = (s.a_big(), s.b_big());
    for x in xs {
        let y0 = if x == 0 { 1 } else { -h };
        let t = &a * x + &b * y0;
        let (mut k, mut r) = split(&t, &d);
        for y in y0..=h {
            let m = x.max(y.abs());
            // z = -k leaves r, z = -k - 1 leaves d - r
            let z = -(k as i64);
            if z.abs() <= h {
                offer(best, m.max(z.abs()) as usize, (r as u128, [x, y, z]));
            }
            let z = z - 1;
            if r > 0 && z.abs() <= h {
                offer(best, m.max(z.abs()) as usize, ((s.d - r) as u128, [x, y, z]));
            }
            r += s.br;
            k += s.bq;
            if r >= s.d {
                r -= s.d;
                k += 1;
            }
        }
    }
}

fn sign_normalize(v: [i64; 3]) -> [i64; 3] {
    let first = v.iter().find(|c| **c != 0).copied().unwrap_or(1);
    if first < 0 {
        [-v[0], -v[1], -v[2]]
    } else {
        v
    }
}

/// Shell minima of `M`; `z ≥ 1` since `z = 0` gives a value at least 1.
fn m_shells(s: &Scaled, h: i64, best: &mut [Slot]) {
    let (mut kx, mut rx, mut ky, mut ry) = (0i128, 0i128, 0i128, 0i128);
    for z in 1..=h {
        rx += s.ar;
        kx += s.aq;
        if rx >= s.d {
            rx -= s.d;
            kx += 1;
        }
        ry += s.br;
        ky += s.bq;
        if ry >= s.d {
            ry -= s.d;
            ky += 1;
        }
        let xs = [(kx as i64, rx), (kx as i64 + 1, s.d - rx)];
        let ys = [(ky as i64, ry), (ky as i64 + 1, s.d - ry)];
        for &(x, dx) in &xs {
            for &(y, dy) in &ys {
                let n = x.abs().max(y.abs()).max(z);
                if n <= h {
                    offer(best, n as usize, (dx.max(dy) as u128, sign_normalize([x, y, z])));
                }
            }
        }
    }
}

fn shell_minima(s: &Scaled, h: u64, which: Which) -> Vec<Slot> {
    let h = h as i64;
    let len = h as usize + 1;
    match which {
        Which::M => {
            let mut best = vec![EMPTY; len];
            m_shells(s, h, &mut best);
            best
        }
        Which::L => {
            let chunk = 64i64;
            let chunks = (h + 1 + chunk - 1) / chunk;
            (0..chunks)
                .into_par_iter()
                .fold(
                    || vec![EMPTY; len],
                    |mut best, c| {
                        let lo = c * chunk;
                        l_shells(s, h, lo..(lo + chunk).min(h + 1), &mut best);
                        best
                    },
                )
                .reduce(|| vec![EMPTY; len], merge)
        }
    }
}

fn triple_of(v: [i64; 3]) -> IntegerTriple {
    IntegerTriple::normalize(&vec3(v[0], v[1], v[2])).expect("nonzero triple")
}

/// All best approximations of norm at most `hmax`, with certification flags.
pub fn search_records(target: &TargetPoint, hmax: u64, which: Which) -> Result<Vec<ApproxRecord>, SearchError> {
    search_records_with(target, hmax, which, &SearchOptions::default())
}

pub fn search_records_with(
    target: &TargetPoint,
    hmax: u64,
    which: Which,
    opts: &SearchOptions,
) -> Result<Vec<ApproxRecord>, SearchError> {
    if hmax == 0 {
        return Err(SearchError::HmaxTooSmall { min: 1, got: hmax });
    }
    if hmax > MAX_HMAX {
        return Err(SearchError::HmaxTooLarge(hmax));
    }
    let s = Scaled::new(target)?;
    let best = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(|| shell_minima(&s, hmax, which)),
        None => shell_minima(&s, hmax, which),
    };

    let eps = &target.radius + &s.fp_error;
    let spread = BigRational::from_integer(BigInt::from(match which {
        Which::L => 2,
        Which::M => 1,
    }));
    let one = BigRational::one();
    let mut running = s.d as u128;
    let mut records: Vec<ApproxRecord> = Vec::new();
    let mut certifying = true;
    for (n, slot) in best.iter().enumerate().skip(1) {
        if slot.0 >= running {
            continue;
        }
        let triple = triple_of(slot.1);
        let value = match which {
            Which::L => seminorm_l(triple.coords(), target),
            Which::M => seminorm_m(triple.coords(), target),
        };
        if value.is_exact_zero() {
            let [x, y, z] = triple.into_inner();
            return Err(SearchError::RationalDependence { x, y, z });
        }
        // every triple of smaller norm has center value at least `running / d`
        let floor = BigRational::new(BigInt::from(running), BigInt::from(s.d))
            - &spread * BigRational::from_integer(BigInt::from(n as u64 - 1)) * &eps;
        let ok = certifying && value.hi < one && floor > value.hi;
        if !ok && records.is_empty() {
            return Err(SearchError::TargetTooCoarse);
        }
        certifying = ok;
        records.push(ApproxRecord { triple, norm: n as u64, value, certified: ok });
        running = slot.0;
    }
    Ok(records)
}
