//! Verification of a stored construction run.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::quadruple::{diagnostics, predict_quadruple, Diagnostics, ExponentQuadruple};
use crate::approx::{search_records, Which};
use crate::construction::params::ConstructionParams;
use crate::construction::run::{certify, Certificate, ConstructionRun};
use crate::geometry::{linear_form_at, sim_form_at, IntegerTriple};
use crate::num::{exponent_enclosure, Enclosure, ExtReal};

pub const REPORT_SCHEMA: &str = "dioph-report/1";

#[derive(Clone, Debug)]
pub struct RunCheckOptions {
    /// Norm bound of the foreign-triple scan; 0 skips it.
    pub scan_hmax: u64,
}

impl Default for RunCheckOptions {
    fn default() -> Self {
        RunCheckOptions { scan_hmax: 1000 }
    }
}

/// Exponents read off the deepest level at the final target center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalQuadruple {
    pub level: usize,
    pub v: Enclosure,
    pub v_prime: Enclosure,
    pub w: Enclosure,
    pub w_prime: Enclosure,
}

impl EmpiricalQuadruple {
    pub fn components(&self) -> [Enclosure; 4] {
        [self.v, self.v_prime, self.w, self.w_prime]
    }
}

/// Relative error of each empirical component against the prediction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub predicted: ExponentQuadruple,
    /// `|mid − predicted| / predicted`; absent for infinite predictions.
    pub relative_error: [Option<f64>; 4],
}

/// Best approximations of the run's target found by a blind scan, and
/// whether each one is a triple of the construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForeignScan {
    pub hmax: u64,
    /// Records must be charted from this height on (the first constructed height).
    pub charted_from: [u64; 2],
    pub records: [usize; 2],
    pub foreign: Vec<(Which, IntegerTriple)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub certificates: Vec<Certificate>,
    pub stored_certificates_match: bool,
    pub certificates_pass: bool,
    pub empirical: Option<EmpiricalQuadruple>,
    pub comparison: Option<Comparison>,
    pub diagnostics: Option<Diagnostics>,
    pub scan: Option<ForeignScan>,
    /// Whether re-serializing the parsed file reproduced it byte for byte;
    /// set by callers that read the run from disk.
    #[serde(default)]
    pub file_round_trip: Option<bool>,
    pub pass: bool,
}

fn max_enc(a: Option<Enclosure>, b: Enclosure) -> Option<Enclosure> {
    Some(match a {
        None => b,
        Some(a) => Enclosure { lo: a.lo.max(b.lo), hi: a.hi.max(b.hi) },
    })
}

fn min_enc(a: Option<Enclosure>, b: Enclosure) -> Option<Enclosure> {
    Some(match a {
        None => b,
        Some(a) => Enclosure { lo: a.lo.min(b.lo), hi: a.hi.min(b.hi) },
    })
}

fn exponent(value: &BigRational, norm: &BigInt) -> Option<Enclosure> {
    exponent_enclosure(value, value, norm)
}

/// `v̂ = max −ln L(Δ_k)/ln‖Δ_k‖`, `ŵ = min −ln L(Δ_k)/ln‖Δ_{k+1}‖` over the
/// lines of the deepest level, and likewise with `M` over its points.
pub fn empirical_quadruple(run: &ConstructionRun) -> Option<EmpiricalQuadruple> {
    let level = run.levels.last()?;
    let (a, b) = (&run.target.alpha, &run.target.beta);
    let (mut v, mut w, mut vp, mut wp) = (None, None, None, None);
    for k in 0..level.lines.len().saturating_sub(1) {
        let val = linear_form_at(level.lines[k].coords(), a, b).abs();
        v = max_enc(v, exponent(&val, &level.lines[k].norm())?);
        w = min_enc(w, exponent(&val, &level.lines[k + 1].norm())?);
    }
    for k in 0..level.points.len().saturating_sub(1) {
        let val = sim_form_at(level.points[k].coords(), a, b);
        vp = max_enc(vp, exponent(&val, &level.points[k].norm())?);
        wp = min_enc(wp, exponent(&val, &level.points[k + 1].norm())?);
    }
    Some(EmpiricalQuadruple { level: level.n, v: v?, v_prime: vp?, w: w?, w_prime: wp? })
}

fn compare(predicted: ExponentQuadruple, e: &EmpiricalQuadruple) -> Comparison {
    let mut rel = [None; 4];
    for (i, (p, m)) in predicted.components().iter().zip(e.components()).enumerate() {
        if let ExtReal::Finite(_) = p {
            let p = p.to_f64();
            rel[i] = Some((m.mid() - p).abs() / p);
        }
    }
    Comparison { predicted, relative_error: rel }
}

fn foreign_scan(run: &ConstructionRun, hmax: u64) -> Option<ForeignScan> {
    let lines: Vec<&IntegerTriple> = run.levels.iter().flat_map(|l| l.lines.iter()).collect();
    let points: Vec<&IntegerTriple> = run.levels.iter().flat_map(|l| l.points.iter()).collect();
    let from =
        |v: &[&IntegerTriple]| v.iter().map(|t| t.norm()).min().and_then(|n| num_traits::ToPrimitive::to_u64(&n));
    let charted_from = [from(&lines)?, from(&points)?];
    let mut foreign = Vec::new();
    let mut counts = [0; 2];
    for (i, (which, family)) in [(Which::L, &lines), (Which::M, &points)].into_iter().enumerate() {
        let records = search_records(&run.target, hmax, which).ok()?;
        counts[i] = records.len();
        for r in records.iter().filter(|r| r.certified && r.norm >= charted_from[i]) {
            if !family.contains(&&r.triple) {
                foreign.push((which, r.triple.clone()));
            }
        }
    }
    Some(ForeignScan { hmax, charted_from, records: counts, foreign })
}

/// Re-derives every certificate, estimates the exponents from the run's own
/// triples and compares them with the prediction.
pub fn certify_run(run: &ConstructionRun, opts: &RunCheckOptions) -> RunReport {
    let certificates = certify(run);
    let stored_certificates_match = certificates == run.certificates;
    let certificates_pass = certificates.iter().all(|c| c.holds);
    let empirical = empirical_quadruple(run);
    let comparison = match (predict_quadruple(&run.params), &empirical) {
        (Ok(p), Some(e)) => Some(compare(p, e)),
        _ => None,
    };
    let diagnostics = match &run.params {
        ConstructionParams::Finite(p) => Some(diagnostics(p)),
        _ => None,
    };
    let scan = if opts.scan_hmax > 0 && certificates_pass { foreign_scan(run, opts.scan_hmax) } else { None };
    let pass = certificates_pass && stored_certificates_match;
    RunReport {
        schema: REPORT_SCHEMA.into(),
        certificates,
        stored_certificates_match,
        certificates_pass,
        empirical,
        comparison,
        diagnostics,
        scan,
        file_round_trip: None,
        pass,
    }
}
