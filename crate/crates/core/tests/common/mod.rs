//! Reference implementations used to check the optimized search.
//!
//! Values are compared exactly at the target center, scaled to a common
//! denominator, with no incremental updates.

#![allow(dead_code)]

use dioph_core::approx::{brute_force_minima, trace_witnesses, ApproxRecord, Which};
use dioph_core::construction::FiniteParams;
use dioph_core::num::rational_from_int;
use dioph_core::target::{parse_target, TargetPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use rand::RngExt;

pub struct Center {
    pub d: BigInt,
    pub a: BigInt,
    pub b: BigInt,
}

impl Center {
    pub fn of(t: &TargetPoint) -> Self {
        let d = t.alpha.denom().lcm(t.beta.denom());
        let a = t.alpha.numer() * (&d / t.alpha.denom());
        let b = t.beta.numer() * (&d / t.beta.denom());
        Center { d, a, b }
    }

    /// `|xα + yβ + z|·d`.
    pub fn l(&self, x: i64, y: i64, z: i64) -> BigInt {
        (&self.a * x + &self.b * y + &self.d * z).abs()
    }

    /// `max(|zα − x|, |zβ − y|)·d`.
    pub fn m(&self, x: i64, y: i64, z: i64) -> BigInt {
        let dx = (&self.a * z - &self.d * x).abs();
        let dy = (&self.b * z - &self.d * y).abs();
        dx.max(dy)
    }

    /// Integer nearest to `num/d`.
    fn round(&self, num: &BigInt) -> i64 {
        let (q, r) = num.div_mod_floor(&self.d);
        let q: i64 = q.try_into().unwrap();
        if &r * 2 >= self.d {
            q + 1
        } else {
            q
        }
    }
}

fn sign_normalized(v: [i64; 3]) -> bool {
    match v.iter().find(|c| **c != 0) {
        Some(c) => *c > 0,
        None => false,
    }
}

fn norm(v: [i64; 3]) -> usize {
    v.iter().map(|c| c.unsigned_abs()).max().unwrap() as usize
}

fn primitive(v: [i64; 3]) -> [i64; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    [v[0] / g, v[1] / g, v[2] / g]
}

struct Shells {
    best: Vec<Option<(BigInt, [i64; 3])>>,
}

impl Shells {
    fn new(h: u64) -> Self {
        Shells { best: vec![None; h as usize + 1] }
    }

    fn offer(&mut self, v: [i64; 3], value: BigInt) {
        let n = norm(v);
        if n >= self.best.len() || !sign_normalized(v) {
            return;
        }
        let replace = match &self.best[n] {
            None => true,
            Some((bv, bt)) => value < *bv || (value == *bv && v < *bt),
        };
        if replace {
            self.best[n] = Some((value, v));
        }
    }

    /// Strict running minima starting from the value 1.
    fn records(self, d: &BigInt) -> Vec<(u64, [i64; 3], BigInt)> {
        let mut running = d.clone();
        let mut out = Vec::new();
        for (n, slot) in self.best.into_iter().enumerate() {
            if let Some((value, v)) = slot {
                if value < running {
                    running = value.clone();
                    out.push((n as u64, primitive(v), value));
                }
            }
        }
        out
    }
}

/// Every triple in `[-h, h]³`; only usable for small `h`.
pub fn full_scan(t: &TargetPoint, h: u64, which: Which) -> Vec<(u64, [i64; 3], BigInt)> {
    let c = Center::of(t);
    let h = h as i64;
    let mut shells = Shells::new(h as u64);
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                let v = [x, y, z];
                if !sign_normalized(v) {
                    continue;
                }
                let value = match which {
                    Which::L => c.l(x, y, z),
                    Which::M => c.m(x, y, z),
                };
                shells.offer(v, value);
            }
        }
    }
    shells.records(&c.d)
}

/// For `L`, every `(x, y)` with the three integers around `-(xα + yβ)`;
/// for `M`, every `z ≥ 1` with the three integers around `zα` and `zβ`.
pub fn neighbour_scan(t: &TargetPoint, h: u64, which: Which) -> Vec<(u64, [i64; 3], BigInt)> {
    let c = Center::of(t);
    let hi = h as i64;
    let mut shells = Shells::new(h);
    match which {
        Which::L => {
            for x in 0..=hi {
                for y in -hi..=hi {
                    let s = &c.a * x + &c.b * y;
                    let z0 = -c.round(&s);
                    for z in z0 - 1..=z0 + 1 {
                        if z.abs() <= hi {
                            shells.offer([x, y, z], (&s + &c.d * z).abs());
                        }
                    }
                }
            }
        }
        Which::M => {
            for z in 1..=hi {
                let x0 = c.round(&(&c.a * z));
                let y0 = c.round(&(&c.b * z));
                for x in x0 - 1..=x0 + 1 {
                    for y in y0 - 1..=y0 + 1 {
                        let v = [x, y, z];
                        let v = if sign_normalized(v) { v } else { [-x, -y, -z] };
                        shells.offer(v, c.m(x, y, z));
                    }
                }
            }
        }
    }
    shells.records(&c.d)
}

/// `(norm, primitive triple)` of each record of the optimized search.
pub fn shape(records: &[ApproxRecord]) -> Vec<(u64, [i64; 3])> {
    records
        .iter()
        .map(|r| {
            let c = r.triple.coords();
            let v = [0, 1, 2].map(|i| i64::try_from(&c[i]).unwrap());
            (r.norm, v)
        })
        .collect()
}

pub fn oracle_shape(records: &[(u64, [i64; 3], BigInt)]) -> Vec<(u64, [i64; 3])> {
    records.iter().map(|(n, v, _)| (*n, *v)).collect()
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A parameter set meeting the strict conditions, with small denominators.
pub fn random_params(rng: &mut impl rand::Rng) -> FiniteParams {
    loop {
        let w = frac(2 * 8 + rng.random_range(0..=64), 8);
        let tau1 = frac(rng.random_range(1..=12), 12);
        let one = rational_from_int(1);
        let cap = (&tau1 / (&w - &one)).min(tau1.clone());
        let tau0 = &cap * frac(rng.random_range(1..=11), 12);
        let lo = &w * &tau0;
        let hi = (&tau0 + &tau1).min(&w - &one + &tau0);
        let sigma = &lo + (&hi - &lo) * frac(rng.random_range(0..=11), 12);
        let p = FiniteParams::new(w, tau0, tau1, sigma);
        if p.validate().is_ok() {
            return p;
        }
    }
}

/// Parameters with `v = w(w−1)`: the refined bounds then coincide. This
/// forces `tau1 = 1`, `tau0 = 1/(w−1)` and `sigma = w/(w−1)`.
pub fn minimal_v_params(w: BigRational) -> FiniteParams {
    let one = rational_from_int(1);
    let tau0 = &one / (&w - &one);
    let sigma = &w / (&w - &one);
    FiniteParams::new(w, tau0, one, sigma)
}

pub const SQUAREFREE: [u64; 15] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23];

/// Consecutive-pair witness bounds over `L` and `M` traces of many
/// quadratic targets: `(pairs, checks, failures)`.
pub fn witness_suite(min_pairs: usize, hmax: u64) -> (usize, usize, Vec<String>) {
    let (mut pairs, mut checks, mut failures) = (0, 0, Vec::new());
    'outer: for (i, &p) in SQUAREFREE.iter().enumerate() {
        for &q in &SQUAREFREE[i + 1..] {
            let spec = format!("sqrt:{p},{q}");
            let t = parse_target(&spec, 60).unwrap();
            for which in [Which::L, Which::M] {
                let trace = brute_force_minima(&t, hmax, which).unwrap();
                let w = trace_witnesses(&t, &trace).unwrap();
                pairs += trace.records.len().saturating_sub(1);
                checks += w.len();
                failures.extend(
                    w.iter().filter(|c| !c.holds()).map(|c| format!("{spec} {which} #{}: {}", c.index, c.name)),
                );
            }
            if pairs >= min_pairs {
                break 'outer;
            }
        }
    }
    (pairs, checks, failures)
}
