//! Exponent traces `v_n`, `w_n` of a record sequence and their summaries.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::search::{search_records_with, ApproxRecord, SearchOptions, Which};
use crate::error::SearchError;
use crate::num::{exponent_enclosure, Enclosure};
use crate::target::TargetPoint;

pub const CSV_HEADER: &str = "n,x,y,z,norm,value_lo,value_hi,v_n,w_n,certified";

/// Records with `value_n = norm_n^(-v_n) = norm_{n+1}^(-w_n)`.
///
/// `v_n` is undefined at norm 1 and `w_n` for the last record.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentTrace {
    pub which: Which,
    pub records: Vec<ApproxRecord>,
    pub v: Vec<Option<Enclosure>>,
    pub w: Vec<Option<Enclosure>>,
}

pub fn exponent_trace(which: Which, records: Vec<ApproxRecord>) -> ExponentTrace {
    let v = records.iter().map(|r| exponent_enclosure(&r.value.lo, &r.value.hi, &BigInt::from(r.norm))).collect();
    let w = (0..records.len())
        .map(|i| {
            let next = records.get(i + 1)?;
            let r = &records[i];
            exponent_enclosure(&r.value.lo, &r.value.hi, &BigInt::from(next.norm))
        })
        .collect();
    ExponentTrace { which, records, v, w }
}

/// Certified best approximations of norm at most `hmax` with their exponents.
pub fn brute_force_minima(target: &TargetPoint, hmax: u64, which: Which) -> Result<ExponentTrace, SearchError> {
    brute_force_minima_with(target, hmax, which, &SearchOptions::default())
}

pub fn brute_force_minima_with(
    target: &TargetPoint,
    hmax: u64,
    which: Which,
    opts: &SearchOptions,
) -> Result<ExponentTrace, SearchError> {
    Ok(exponent_trace(which, search_records_with(target, hmax, which, opts)?))
}

/// Estimates `(ω, ω̂)` as `(max v_n, min w_n)` over a trailing window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub which: Which,
    /// Window actually used, after clamping to the certified records.
    pub window: usize,
    pub certified_records: usize,
    pub omega: Option<Enclosure>,
    pub omega_hat: Option<Enclosure>,
}

fn hull<'a>(it: impl Iterator<Item = &'a Enclosure>, pick_max: bool) -> Option<Enclosure> {
    it.fold(None, |acc: Option<Enclosure>, e| {
        Some(match acc {
            None => *e,
            Some(a) if pick_max => Enclosure { lo: a.lo.max(e.lo), hi: a.hi.max(e.hi) },
            Some(a) => Enclosure { lo: a.lo.min(e.lo), hi: a.hi.min(e.hi) },
        })
    })
}

/// Uses only the certified records of norm above 1, where the sequence of
/// best approximations properly starts; a larger window is clamped.
pub fn summarize(trace: &ExponentTrace, window: usize) -> Summary {
    let certified = trace.records.iter().take_while(|r| r.certified).count();
    let start = trace.records[..certified].iter().take_while(|r| r.norm <= 1).count();
    let window = window.min(certified - start);
    let range = certified - window..certified;
    let v: Vec<&Enclosure> = trace.v[range.clone()].iter().flatten().collect();
    // w_n needs the next record to be a certified minimum as well
    let w: Vec<&Enclosure> = range.filter(|&i| i + 1 < certified).filter_map(|i| trace.w[i].as_ref()).collect();
    Summary {
        which: trace.which,
        window,
        certified_records: certified,
        omega: hull(v.into_iter(), true),
        omega_hat: hull(w.into_iter(), false),
    }
}

fn cell(e: &Option<Enclosure>) -> String {
    e.map(|e| e.to_string()).unwrap_or_default()
}

fn float(q: &num_rational::BigRational) -> String {
    format!("{:.15e}", q.to_f64().unwrap_or(f64::NAN))
}

/// CSV export, one line per record, `n` counted from 1.
pub fn to_csv(trace: &ExponentTrace) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (i, r) in trace.records.iter().enumerate() {
        let [x, y, z] = r.triple.coords();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            i + 1,
            x,
            y,
            z,
            r.norm,
            float(&r.value.lo),
            float(&r.value.hi),
            cell(&trace.v[i]),
            cell(&trace.w[i]),
            r.certified
        )
        .unwrap();
    }
    out
}

/// `(log10 norm, log10 value)` pairs at the interval midpoints, for plotting.
pub fn plot_csv(trace: &ExponentTrace) -> String {
    let mut out = String::from("log10_norm,log10_value\n");
    for r in &trace.records {
        let mid = (&r.value.lo + &r.value.hi) / BigInt::from(2);
        let (lo, hi) = crate::num::ln_enclosure_rational(&mid);
        let lv = 0.5 * (lo + hi) / std::f64::consts::LN_10;
        writeln!(out, "{:.12},{:.12}", (r.norm as f64).log10(), lv).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ErrorInterval, IntegerTriple};
    use crate::num::parse_rational;
    use crate::target::target_quadratic;

    fn rec(norm: u64, value: &str) -> ApproxRecord {
        let v = parse_rational(value).unwrap();
        ApproxRecord {
            triple: IntegerTriple::from_i64(1, norm as i64, 0).unwrap(),
            norm,
            value: ErrorInterval::point(v),
            certified: true,
        }
    }

    #[test]
    fn value_one_over_norm_gives_one() {
        let t = exponent_trace(Which::L, vec![rec(7, "1/7"), rec(49, "1/2401")]);
        assert!(t.v[0].unwrap().contains(1.0));
        // 1/2401 = 49^-2 and the next norm is absent
        assert!(t.v[1].unwrap().contains(2.0));
        assert_eq!(t.w[1], None);
        // 1/7 = 49^(-1/2)
        assert!(t.w[0].unwrap().contains(0.5));
    }

    #[test]
    fn squared_norm_identity() {
        // value = n^-2 with next norm n^2 gives w = 1
        let t = exponent_trace(Which::M, vec![rec(10, "1/100"), rec(100, "1/100000")]);
        assert!(t.w[0].unwrap().contains(1.0));
        assert!(t.w[0].unwrap().width() < 1e-12);
    }

    #[test]
    fn norm_one_has_no_v() {
        let t = exponent_trace(Which::M, vec![rec(1, "1/2"), rec(3, "1/5")]);
        assert_eq!(t.v[0], None);
        assert!(t.w[0].is_some());
    }

    #[test]
    fn window_is_clamped() {
        let t = exponent_trace(Which::L, vec![rec(2, "1/4"), rec(4, "1/16"), rec(16, "1/256")]);
        let s = summarize(&t, 50);
        assert_eq!(s.window, 3);
        assert!(s.omega.unwrap().contains(2.0));
        assert!(s.omega_hat.unwrap().contains(1.0));
    }

    #[test]
    fn norm_one_is_left_out_of_summaries() {
        let t = exponent_trace(Which::L, vec![rec(1, "1/2"), rec(2, "1/4"), rec(4, "1/64"), rec(8, "1/4096")]);
        let s = summarize(&t, 10);
        assert_eq!(s.window, 3);
        // w at norm 1 would be 1/2; from norm 2 on the smallest w is 1
        assert!(s.omega_hat.unwrap().contains(1.0));
    }

    #[test]
    fn csv_shape() {
        let target = target_quadratic(2, 3, 60).unwrap();
        let t = brute_force_minima(&target, 100, Which::M).unwrap();
        let csv = to_csv(&t);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(lines.next().unwrap().starts_with("1,0,1,1,1,"));
        assert_eq!(csv.lines().count(), t.records.len() + 1);
        assert_eq!(plot_csv(&t).lines().count(), t.records.len() + 1);
    }
}
