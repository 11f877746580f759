//! Parameter sets for the construction and the inequalities they must meet.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::num::{rational_from_int, ExtReal};

/// A named inequality. Rejections always carry one of these so callers can
/// tell which constraint failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    WAtLeastTwo,
    Tau0Positive,
    Tau0BelowTau1,
    Tau1AtMostOne,
    WTau0AtMostSigma,
    SigmaAtMostTauSum,
    SigmaBelowBound,
    VPrimeAtLeastWMinusOne,
    LevelAboveRatio,
    LevelAtLeastW,
    LevelAtLeastFour,
    TauGrowth,
    SigmaIncreasing,
    SigmaGrowth,
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Inequality::WAtLeastTwo => "w >= 2",
            Inequality::Tau0Positive => "tau0 > 0",
            Inequality::Tau0BelowTau1 => "tau0 < tau1",
            Inequality::Tau1AtMostOne => "tau1 <= 1",
            Inequality::WTau0AtMostSigma => "w*tau0 <= sigma",
            Inequality::SigmaAtMostTauSum => "sigma <= tau0 + tau1",
            Inequality::SigmaBelowBound => "sigma < w - 1 + tau0",
            Inequality::VPrimeAtLeastWMinusOne => "v' >= w - 1",
            Inequality::LevelAboveRatio => "n > w/sigma",
            Inequality::LevelAtLeastW => "n >= w",
            Inequality::LevelAtLeastFour => "n >= 4",
            Inequality::TauGrowth => "(w - 1 + tau_{k+1})/tau_k <= (w - 1 + tau1)/tau0",
            Inequality::SigmaIncreasing => "sigma_k strictly increasing from sigma to sigma/tau0",
            Inequality::SigmaGrowth => "(sigma_{k+1} - 1)/sigma_k <= (w - 1)/sigma",
        };
        f.write_str(s)
    }
}

/// The two boundary families that the strict conditions leave out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalFamily {
    /// `w = 2, tau0 = tau1, sigma = 2 tau0`
    EqualTaus,
    /// `w = 2, tau1 = 1, sigma = 1 + tau0`
    UnitTau1,
}

impl fmt::Display for ExtremalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalFamily::EqualTaus => f.write_str("(w = 2, tau0 = tau1, sigma = 2 tau0)"),
            ExtremalFamily::UnitTau1 => f.write_str("(w = 2, tau1 = 1, sigma = 1 + tau0)"),
        }
    }
}

/// `(w, tau0, tau1, sigma)` of the basic construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteParams {
    #[serde(with = "crate::serde_rational")]
    pub w: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub tau0: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub tau1: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub sigma: BigRational,
}

fn fail(violated: Inequality) -> ConstructionError {
    ConstructionError::InvalidParams { violated }
}

impl FiniteParams {
    pub fn new(w: BigRational, tau0: BigRational, tau1: BigRational, sigma: BigRational) -> Self {
        FiniteParams { w, tau0, tau1, sigma }
    }

    /// Checks the strict conditions the construction needs. The two
    /// boundary families are reported as [`ConstructionError::ExcludedExtremalCase`].
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let one = BigRational::one();
        let two = rational_from_int(2);
        let FiniteParams { w, tau0, tau1, sigma } = self;
        if w < &two {
            return Err(fail(Inequality::WAtLeastTwo));
        }
        if !tau0.is_positive() {
            return Err(fail(Inequality::Tau0Positive));
        }
        if w == &two && tau0 == tau1 && sigma == &(&two * tau0) {
            return Err(ConstructionError::ExcludedExtremalCase {
                family: ExtremalFamily::EqualTaus,
                violated: Inequality::Tau0BelowTau1,
            });
        }
        if w == &two && tau1 == &one && sigma == &(&one + tau0) {
            return Err(ConstructionError::ExcludedExtremalCase {
                family: ExtremalFamily::UnitTau1,
                violated: Inequality::SigmaBelowBound,
            });
        }
        if tau0 >= tau1 {
            return Err(fail(Inequality::Tau0BelowTau1));
        }
        if tau1 > &one {
            return Err(fail(Inequality::Tau1AtMostOne));
        }
        if &(w * tau0) > sigma {
            return Err(fail(Inequality::WTau0AtMostSigma));
        }
        if sigma > &(tau0 + tau1) {
            return Err(fail(Inequality::SigmaAtMostTauSum));
        }
        if sigma >= &(w - &one + tau0) {
            return Err(fail(Inequality::SigmaBelowBound));
        }
        Ok(())
    }

    /// The weaker conditions under which the predicted quadruple is attained
    /// (including the two boundary families).
    pub fn validate_weak(&self) -> Result<(), ConstructionError> {
        let FiniteParams { w, tau0, tau1, sigma } = self;
        if w < &rational_from_int(2) {
            return Err(fail(Inequality::WAtLeastTwo));
        }
        if !tau0.is_positive() {
            return Err(fail(Inequality::Tau0Positive));
        }
        if tau1 > &BigRational::one() {
            return Err(fail(Inequality::Tau1AtMostOne));
        }
        if &(w * tau0) > sigma {
            return Err(fail(Inequality::WTau0AtMostSigma));
        }
        if sigma > &(tau0 + tau1) {
            return Err(fail(Inequality::SigmaAtMostTauSum));
        }
        Ok(())
    }
}

/// Which construction to run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ConstructionParams {
    Finite(FiniteParams),
    /// `v = +inf` with prescribed `w` and `v'` (`v'` may be infinite).
    VInfinite {
        #[serde(with = "crate::serde_rational")]
        w: BigRational,
        v_prime: ExtReal,
    },
    /// `v = v' = w = +inf`.
    AllInfinite,
}

impl ConstructionParams {
    pub fn finite(w: BigRational, tau0: BigRational, tau1: BigRational, sigma: BigRational) -> Self {
        ConstructionParams::Finite(FiniteParams::new(w, tau0, tau1, sigma))
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        match self {
            ConstructionParams::Finite(p) => p.validate(),
            ConstructionParams::VInfinite { w, v_prime } => {
                if w < &rational_from_int(2) {
                    return Err(fail(Inequality::WAtLeastTwo));
                }
                match v_prime {
                    ExtReal::PosInf => Ok(()),
                    ExtReal::Finite(v) if v >= &(w - BigRational::one()) && !v.is_zero() => Ok(()),
                    _ => Err(fail(Inequality::VPrimeAtLeastWMinusOne)),
                }
            }
            ConstructionParams::AllInfinite => Ok(()),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            ConstructionParams::Finite(_) => "finite",
            ConstructionParams::VInfinite { .. } => "v-infinite",
            ConstructionParams::AllInfinite => "all-infinite",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::parse_rational;

    fn p(w: &str, t0: &str, t1: &str, s: &str) -> FiniteParams {
        let q = |x| parse_rational(x).unwrap();
        FiniteParams::new(q(w), q(t0), q(t1), q(s))
    }

    #[test]
    fn accepts_reference_sets() {
        assert!(p("3", "1/2", "1", "3/2").validate().is_ok());
        assert!(p("2", "1/3", "2/3", "5/6").validate().is_ok());
    }

    #[test]
    fn names_the_failing_inequality() {
        let cases = [
            (p("3/2", "1/2", "1", "3/4"), Inequality::WAtLeastTwo),
            (p("3", "0", "1", "3/2"), Inequality::Tau0Positive),
            (p("3", "1/2", "1/2", "3/2"), Inequality::Tau0BelowTau1),
            (p("3", "1/4", "5/4", "1"), Inequality::Tau1AtMostOne),
            (p("3", "1/2", "1", "1"), Inequality::WTau0AtMostSigma),
            (p("2", "1/4", "1/2", "4/5"), Inequality::SigmaAtMostTauSum),
        ];
        for (params, want) in cases {
            assert_eq!(params.validate().unwrap_err().violated(), Some(want), "{params:?}");
        }
    }

    #[test]
    fn extremal_families_are_excluded() {
        let e = p("2", "1/2", "1/2", "1").validate().unwrap_err();
        assert!(matches!(e, ConstructionError::ExcludedExtremalCase { family: ExtremalFamily::EqualTaus, .. }));
        assert_eq!(e.violated(), Some(Inequality::Tau0BelowTau1));
        assert!(e.to_string().contains("requires tau0 < tau1"));
        let e = p("2", "1/3", "1", "4/3").validate().unwrap_err();
        assert!(matches!(e, ConstructionError::ExcludedExtremalCase { family: ExtremalFamily::UnitTau1, .. }));
        assert_eq!(e.violated(), Some(Inequality::SigmaBelowBound));
        assert!(p("2", "1/3", "1", "4/3").validate_weak().is_ok());
    }

    #[test]
    fn infinite_modes_validate() {
        let q = |x| parse_rational(x).unwrap();
        assert!(ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("4")) }.validate().is_ok());
        assert!(ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::PosInf }.validate().is_ok());
        let bad = ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("1")) };
        assert_eq!(bad.validate().unwrap_err().violated(), Some(Inequality::VPrimeAtLeastWMinusOne));
    }

    #[test]
    fn params_round_trip_through_json() {
        let params = ConstructionParams::Finite(p("3", "1/2", "1", "3/2"));
        let s = serde_json::to_string(&params).unwrap();
        assert!(s.contains("\"mode\":\"finite\""));
        assert_eq!(serde_json::from_str::<ConstructionParams>(&s).unwrap(), params);
    }
}
