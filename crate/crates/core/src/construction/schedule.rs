//! Exponent schedules `tau_0 < … < tau_l = 1` and `sigma_0 < … < sigma_l'`
//! driving the target heights of each level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::params::{ConstructionParams, FiniteParams, Inequality};
use crate::error::ConstructionError;
use crate::num::{rational_from_int, ExtReal};

/// Longest sigma ramp accepted before giving up.
const MAX_RAMP: usize = 4096;

/// Exponent sequences for one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    #[serde(with = "crate::serde_rational::vec")]
    pub tau: Vec<BigRational>,
    #[serde(with = "crate::serde_rational::vec")]
    pub sigma: Vec<BigRational>,
}

impl Schedule {
    /// `l`, the index of the last tau.
    pub fn ell(&self) -> usize {
        self.tau.len() - 1
    }

    /// `l'`, the index of the last sigma.
    pub fn ell_prime(&self) -> usize {
        self.sigma.len() - 1
    }

    /// Growth factor of the base height from this level to the next.
    pub fn growth(&self) -> BigRational {
        self.tau[0].recip()
    }
}

fn invalid(violated: Inequality) -> ConstructionError {
    ConstructionError::InvalidParams { violated }
}

/// Checks the tau/sigma conditions for a level whose data are `(w, tau, sigma)`.
pub fn check_schedule(s: &Schedule, w: &BigRational) -> Result<(), ConstructionError> {
    let one = BigRational::one();
    let (tau, sigma) = (&s.tau, &s.sigma);
    if tau.len() < 2 || sigma.len() < 2 {
        return Err(invalid(Inequality::Tau0BelowTau1));
    }
    if tau.last() != Some(&one) || tau.windows(2).any(|p| p[0] >= p[1]) {
        return Err(invalid(Inequality::Tau0BelowTau1));
    }
    let bound = (w - &one + &tau[1]) / &tau[0];
    for k in 0..tau.len() - 1 {
        if (w - &one + &tau[k + 1]) / &tau[k] > bound {
            return Err(invalid(Inequality::TauGrowth));
        }
    }
    if sigma.windows(2).any(|p| p[0] >= p[1]) || &sigma[1] != w {
        return Err(invalid(Inequality::SigmaIncreasing));
    }
    let limit = (w - &one) / &sigma[0];
    for k in 0..sigma.len() - 1 {
        if (&sigma[k + 1] - &one) / &sigma[k] > limit {
            return Err(invalid(Inequality::SigmaGrowth));
        }
    }
    Ok(())
}

/// Schedule of the basic construction: `tau_k = min(1, tau0 + k(tau1 - tau0))`
/// and a geometric sigma ramp `sigma, w, w·rho, …, sigma/tau0` with the
/// largest admissible ratio `rho = (w - 1 + tau0)/sigma`.
pub fn build_schedule(params: &FiniteParams) -> Result<Schedule, ConstructionError> {
    params.validate()?;
    let one = BigRational::one();
    let FiniteParams { w, tau0, tau1, sigma } = params;

    let mut tau = vec![tau0.clone()];
    let step = tau1 - tau0;
    let mut k = 1i64;
    loop {
        let t = tau0 + &step * rational_from_int(k);
        if t >= one {
            tau.push(one.clone());
            break;
        }
        tau.push(t);
        k += 1;
    }

    let end = sigma / tau0;
    let rho = (w - &one + tau0) / sigma;
    let mut sig = vec![sigma.clone(), w.clone()];
    while sig.last().unwrap() < &end {
        if sig.len() > MAX_RAMP {
            return Err(invalid(Inequality::SigmaIncreasing));
        }
        let next = sig.last().unwrap() * &rho;
        sig.push(if next >= end { end.clone() } else { next });
    }
    let schedule = Schedule { tau, sigma: sig };
    check_schedule(&schedule, w)?;
    if schedule.sigma.last() != Some(&end) {
        return Err(invalid(Inequality::SigmaIncreasing));
    }
    Ok(schedule)
}

/// Per-level plans for the finite and infinite modes.
#[derive(Clone, Debug)]
pub struct LevelPlan {
    params: ConstructionParams,
    fixed: Option<Schedule>,
}

impl LevelPlan {
    pub fn new(params: &ConstructionParams) -> Result<Self, ConstructionError> {
        params.validate()?;
        let fixed = match params {
            ConstructionParams::Finite(p) => Some(build_schedule(p)?),
            _ => None,
        };
        Ok(LevelPlan { params: params.clone(), fixed })
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    /// Index of the first level; the infinite modes need `n` large enough.
    pub fn first_level(&self) -> usize {
        match &self.params {
            ConstructionParams::Finite(_) => 1,
            ConstructionParams::VInfinite { w, v_prime: ExtReal::Finite(v) } => {
                let sigma = (w - BigRational::one()) / v;
                (w / sigma).floor().to_integer().to_usize().unwrap_or(usize::MAX) + 1
            }
            ConstructionParams::VInfinite { w, .. } => w.ceil().to_integer().to_usize().unwrap_or(usize::MAX).max(2),
            ConstructionParams::AllInfinite => 4,
        }
    }

    pub fn level(&self, n: usize) -> Result<Schedule, ConstructionError> {
        match &self.fixed {
            Some(s) => Ok(s.clone()),
            None => infinite_schedule(&self.params, n),
        }
    }
}

/// Level-`n` schedule of the infinite modes. `tau = (1/n, 1)` throughout.
///
/// * `v' < inf`: `sigma = (w-1)/v'`, then an arithmetic ramp from `w` to
///   `(n+1)·sigma` with `n` terms.
/// * `v' = inf`: `sigma = (w/n, w)`.
/// * all infinite: as above with `w` replaced by `floor(sqrt n)`, ending at the
///   next level's surrogate so that consecutive levels branch consistently.
pub fn infinite_schedule(params: &ConstructionParams, n: usize) -> Result<Schedule, ConstructionError> {
    params.validate()?;
    let one = BigRational::one();
    let nq = rational_from_int(n as i64);
    let tau = vec![nq.recip(), one.clone()];
    match params {
        ConstructionParams::Finite(p) => build_schedule(p),
        ConstructionParams::VInfinite { w, v_prime: ExtReal::Finite(v) } => {
            let sigma = (w - &one) / v;
            if nq <= w / &sigma {
                return Err(invalid(Inequality::LevelAboveRatio));
            }
            let end = (&nq + &one) * &sigma;
            let step = (&end - w) / rational_from_int(n as i64 - 1);
            let mut sig = vec![sigma.clone(), w.clone()];
            for k in 1..n {
                sig.push(w + &step * rational_from_int(k as i64));
            }
            let s = Schedule { tau, sigma: sig };
            check_schedule(&s, w)?;
            Ok(s)
        }
        ConstructionParams::VInfinite { w, .. } => {
            if &nq < w {
                return Err(invalid(Inequality::LevelAtLeastW));
            }
            let s = Schedule { tau, sigma: vec![w / &nq, w.clone()] };
            check_schedule(&s, w)?;
            Ok(s)
        }
        ConstructionParams::AllInfinite => {
            if n < 4 {
                return Err(invalid(Inequality::LevelAtLeastFour));
            }
            let wn = rational_from_int(BigInt::from(n).sqrt());
            let wnext = rational_from_int(BigInt::from(n + 1).sqrt());
            let s = Schedule { tau, sigma: vec![&wn / &nq, wnext.clone()] };
            check_schedule(&s, &wnext)?;
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn qs(v: &[&str]) -> Vec<BigRational> {
        v.iter().map(|s| q(s)).collect()
    }

    fn fp(w: &str, t0: &str, t1: &str, s: &str) -> FiniteParams {
        FiniteParams::new(q(w), q(t0), q(t1), q(s))
    }

    #[test]
    fn reference_schedule() {
        let s = build_schedule(&fp("3", "1/2", "1", "3/2")).unwrap();
        assert_eq!(s.tau, qs(&["1/2", "1"]));
        assert_eq!(s.sigma, qs(&["3/2", "3"]));
        assert_eq!((s.ell(), s.ell_prime()), (1, 1));
        // equality case of the sigma growth condition
        assert_eq!((&s.sigma[1] - q("1")) / &s.sigma[0], q("4/3"));
    }

    #[test]
    fn three_step_tau() {
        let s = build_schedule(&fp("2", "1/3", "2/3", "5/6")).unwrap();
        assert_eq!(s.tau, qs(&["1/3", "2/3", "1"]));
        assert_eq!(s.sigma, qs(&["5/6", "2", "5/2"]));
    }

    #[test]
    fn long_sigma_ramp_is_checked() {
        // rho = (w-1+tau0)/sigma = (5/2 + 1/10)/ (1/2) close to the end quickly
        let s = build_schedule(&fp("7/2", "1/10", "1/2", "9/20")).unwrap();
        assert_eq!(s.sigma.last().unwrap(), &q("9/2"));
        check_schedule(&s, &q("7/2")).unwrap();
        let s = build_schedule(&fp("5/2", "1/3", "2/3", "13/15")).unwrap();
        assert_eq!(s.sigma.last().unwrap(), &q("13/5"));
        assert!(s.sigma.len() >= 3);
    }

    #[test]
    fn rejects_equal_taus() {
        let e = build_schedule(&fp("2", "1/2", "1/2", "1")).unwrap_err();
        assert_eq!(e.violated(), Some(Inequality::Tau0BelowTau1));
    }

    #[test]
    fn all_infinite_level_nine() {
        let s = infinite_schedule(&ConstructionParams::AllInfinite, 9).unwrap();
        assert_eq!(s.tau, qs(&["1/9", "1"]));
        assert_eq!(s.sigma[0], q("1/3"));
        assert!(infinite_schedule(&ConstructionParams::AllInfinite, 3).is_err());
    }

    #[test]
    fn v_infinite_ramp() {
        let params = ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("4")) };
        // sigma = 1/2, w/sigma = 6
        let e = infinite_schedule(&params, 6).unwrap_err();
        assert_eq!(e.violated(), Some(Inequality::LevelAboveRatio));
        let s = infinite_schedule(&params, 7).unwrap();
        assert_eq!(s.sigma[0], q("1/2"));
        assert_eq!(s.sigma[1], q("3"));
        assert_eq!(s.sigma.len(), 8);
        assert_eq!(s.sigma.last().unwrap(), &q("4"));
        for p in s.sigma[1..].windows(2) {
            assert!(&p[1] - &p[0] < q("1"));
        }
        assert_eq!(LevelPlan::new(&params).unwrap().first_level(), 7);
    }

    #[test]
    fn consecutive_infinite_levels_branch() {
        // q_{n,l'} = h_{n+1}^{sigma_{n,l'}} must equal q_{n+1,0} = h_{n+2}^{sigma_{n+1,0}}
        // with h_{n+2} = h_{n+1}^{n+1}.
        let modes = [
            ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("4")) },
            ConstructionParams::VInfinite { w: q("5/2"), v_prime: ExtReal::PosInf },
            ConstructionParams::AllInfinite,
        ];
        for params in modes {
            let plan = LevelPlan::new(&params).unwrap();
            let n0 = plan.first_level();
            for n in n0..n0 + 6 {
                let a = plan.level(n).unwrap();
                let b = plan.level(n + 1).unwrap();
                assert_eq!(a.sigma.last().unwrap(), &(&b.sigma[0] * b.growth()), "{params:?} n={n}");
                assert_eq!(a.growth(), rational_from_int(n as i64));
            }
        }
    }
}
