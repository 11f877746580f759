//! Integer height targets `h_{n,k}` and `q_{n,k}` of each level.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::schedule::{LevelPlan, Schedule};
use crate::error::ConstructionError;
use crate::num::nearest_rational_power;

/// Default cap on the decimal size of any height the construction computes.
pub const DEFAULT_DIGIT_LIMIT: u64 = 200_000;

/// Targets of level `n`: `h[k] = h_{n,k}` for `k ≤ l` and `q[k] = q_{n,k}` for `k ≤ l'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTargets {
    pub n: usize,
    #[serde(with = "crate::serde_rational::int_vec")]
    pub h: Vec<BigInt>,
    #[serde(with = "crate::serde_rational::int_vec")]
    pub q: Vec<BigInt>,
}

fn digits(x: &BigInt) -> f64 {
    x.bits() as f64 * std::f64::consts::LOG10_2
}

fn approx(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::MAX) / q.denom().to_f64().unwrap_or(1.0)
}

/// Base heights `h_n`, `h_{n+1} = nearest(h_n^(1/tau_{n,0}))`, computed on demand.
pub struct HeightTable<'a> {
    plan: &'a LevelPlan,
    first: usize,
    bases: Vec<BigInt>,
    limit: u64,
}

impl<'a> HeightTable<'a> {
    pub fn new(plan: &'a LevelPlan, h1: &BigInt, limit: u64) -> Self {
        HeightTable { plan, first: plan.first_level(), bases: vec![h1.clone()], limit }
    }

    fn guard(&self, level: usize, base: &BigInt, exponent: &BigRational) -> Result<(), ConstructionError> {
        let d = digits(base) * approx(exponent);
        if d > self.limit as f64 {
            return Err(ConstructionError::DigitBudget { level, digits: d.ceil() as u64, limit: self.limit });
        }
        Ok(())
    }

    /// `h_n`.
    pub fn base(&mut self, n: usize) -> Result<BigInt, ConstructionError> {
        assert!(n >= self.first);
        while self.bases.len() <= n - self.first {
            let m = self.first + self.bases.len() - 1;
            let growth = self.plan.level(m)?.growth();
            let prev = self.bases.last().unwrap().clone();
            self.guard(m + 1, &prev, &growth)?;
            let next = nearest_rational_power(&prev, &growth, 1);
            self.bases.push(next);
        }
        Ok(self.bases[n - self.first].clone())
    }

    fn q_at(&mut self, level: usize, base: &BigInt, sigma: &BigRational) -> Result<BigInt, ConstructionError> {
        self.guard(level, base, sigma)?;
        Ok(nearest_rational_power(base, sigma, 16))
    }

    /// All targets of level `n`, with the branching values
    /// `h_{n,l} = h_{n+1}` and `q_{n,l'} = q_{n+1,0}` imposed exactly.
    pub fn level(&mut self, n: usize) -> Result<LevelTargets, ConstructionError> {
        let s: Schedule = self.plan.level(n)?;
        let hn = self.base(n)?;
        let hn1 = self.base(n + 1)?;
        let mut h = vec![hn];
        for tau in &s.tau[1..s.ell()] {
            self.guard(n, &hn1, tau)?;
            h.push(nearest_rational_power(&hn1, tau, 1));
        }
        h.push(hn1.clone());
        let mut q = Vec::with_capacity(s.sigma.len());
        for sigma in &s.sigma[..s.ell_prime()] {
            q.push(self.q_at(n, &hn1, sigma)?);
        }
        let next = self.plan.level(n + 1)?;
        let hn2 = self.base(n + 2)?;
        q.push(self.q_at(n + 1, &hn2, &next.sigma[0])?);
        Ok(LevelTargets { n, h, q })
    }
}

/// Targets of level `n` for the plan started at `h1`.
pub fn level_heights(plan: &LevelPlan, h1: &BigInt, n: usize) -> Result<LevelTargets, ConstructionError> {
    HeightTable::new(plan, h1, DEFAULT_DIGIT_LIMIT).level(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::params::ConstructionParams;
    use crate::num::parse_rational;

    fn plan(w: &str, t0: &str, t1: &str, s: &str) -> LevelPlan {
        let q = |x| parse_rational(x).unwrap();
        LevelPlan::new(&ConstructionParams::finite(q(w), q(t0), q(t1), q(s))).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reference_level_one() {
        let p = plan("3", "1/2", "1", "3/2");
        let t = level_heights(&p, &BigInt::from(20), 1).unwrap();
        assert_eq!(t.h, ints(&[20, 400]));
        // q_{1,0} = 400^{3/2}/16, q_{1,1} = q_{2,0} = 160000^{3/2}/16 = 400^3/16
        assert_eq!(t.q, ints(&[500, 4_000_000]));
        assert!(t.h[1] >= &t.h[0] * 14);
    }

    #[test]
    fn branching_is_exact() {
        let p = plan("2", "1/3", "2/3", "5/6");
        let mut table = HeightTable::new(&p, &BigInt::from(20), DEFAULT_DIGIT_LIMIT);
        let a = table.level(1).unwrap();
        let b = table.level(2).unwrap();
        assert_eq!(a.h.last(), b.h.first());
        assert_eq!(a.q.last(), b.q.first());
        assert_eq!(a.h.len(), 3);
        assert_eq!(b.h[0], BigInt::from(8000));
    }

    #[test]
    fn digit_budget_aborts() {
        let p = plan("3", "1/2", "1", "3/2");
        let mut table = HeightTable::new(&p, &BigInt::from(20), 1000);
        let err = (1..20).map(|n| table.level(n)).find_map(Result::err).unwrap();
        assert!(matches!(err, ConstructionError::DigitBudget { limit: 1000, .. }));
    }
}
