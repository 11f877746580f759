//! The interleaved construction: lines through `P_{n,0}`, then points on
//! `Δ_{n+1,0}`, level after level, with exact certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::chain::{chain_checks, line_chain, point_chain, raw_dist};
use super::heights::{HeightTable, LevelTargets, DEFAULT_DIGIT_LIMIT};
use super::params::ConstructionParams;
use super::schedule::{LevelPlan, Schedule};
use crate::error::{ConstructionError, TargetError};
use crate::geometry::{dot, linear_form_at, sim_form_at, IntegerTriple, ProjectiveLine, ProjectivePoint};
use crate::num::{ln_enclosure_rational, rational_from_int};
use crate::target::{Provenance, TargetPoint};
use crate::verify::{predict_quadruple, ExponentQuadruple};

pub const RUN_SCHEMA: &str = "dioph-run/1";

/// Constant `C` of the tail bound `d(P_{n,k}, Θ) ≤ C h_{n+1}/(q_{n,k} q_{n,k+1})`.
pub const RADIUS_CONSTANT: u32 = 64;

/// How the first line and point are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedChoice {
    /// Line `h1·x − y = 0` and point `(1 : h1 : q_{1,0})`.
    #[default]
    Standard,
    /// Line `x − h1·y = 0` and point `(h1 : 1 : q_{1,0})`.
    Swapped,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: SeedChoice,
    pub digit_limit: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: SeedChoice::Standard, digit_limit: DEFAULT_DIGIT_LIMIT }
    }
}

/// One level `n`: lines `Δ_{n,0..l}` through `P_{n,0}` and points
/// `P_{n,0..l'}` on `Δ_{n,l} = Δ_{n+1,0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub schedule: Schedule,
    pub targets: LevelTargets,
    pub lines: Vec<IntegerTriple>,
    pub points: Vec<IntegerTriple>,
}

/// An exact inequality re-derivable from the stored data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    /// `rhs − lhs`; nonnegative iff the inequality holds.
    #[serde(with = "crate::serde_rational")]
    pub slack: BigRational,
    pub holds: bool,
}

impl Certificate {
    fn new(name: String, slack: BigRational) -> Self {
        let holds = !slack.is_negative();
        Certificate { name, slack, holds }
    }

    fn equality(name: String, ok: bool) -> Self {
        Certificate::new(name, if ok { BigRational::zero() } else { -BigRational::one() })
    }
}

/// Observed range of `log10(actual / model)` for an estimate whose implied
/// constants are not explicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalConstant {
    pub name: String,
    pub level: usize,
    pub log10_min: f64,
    pub log10_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionRun {
    pub schema: String,
    pub params: ConstructionParams,
    #[serde(with = "crate::serde_rational::int")]
    pub h1: BigInt,
    pub depth: usize,
    pub seed: SeedChoice,
    /// Exponents the parameters are expected to produce in the limit.
    pub predicted: ExponentQuadruple,
    pub radius_constant: u32,
    pub levels: Vec<Level>,
    /// Targets of the level after the last one, used for the final radius.
    pub tail: LevelTargets,
    pub target: TargetPoint,
    pub certificates: Vec<Certificate>,
    pub empirical: Vec<EmpiricalConstant>,
}

fn seed(choice: SeedChoice, h1: &BigInt, q0: &BigInt) -> (IntegerTriple, IntegerTriple) {
    let (line, point) = match choice {
        SeedChoice::Standard => {
            ([h1.clone(), BigInt::from(-1), BigInt::zero()], [BigInt::one(), h1.clone(), q0.clone()])
        }
        SeedChoice::Swapped => ([BigInt::one(), -h1.clone(), BigInt::zero()], [h1.clone(), BigInt::one(), q0.clone()]),
    };
    (IntegerTriple::normalize(&line).expect("nonzero"), IntegerTriple::normalize(&point).expect("nonzero"))
}

fn ints_to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| rational_from_int(x.clone())).collect()
}

/// Levels without certificates; precondition failures are returned as is.
fn build_levels(
    plan: &LevelPlan,
    h1: &BigInt,
    depth: usize,
    opts: &RunOptions,
) -> Result<(Vec<Level>, LevelTargets), ConstructionError> {
    let mut table = HeightTable::new(plan, h1, opts.digit_limit);
    let first = plan.first_level();
    let mut levels: Vec<Level> = Vec::with_capacity(depth);
    for n in first..first + depth {
        let schedule = plan.level(n)?;
        let targets = table.level(n)?;
        let (d0, p0) = match levels.last() {
            None => seed(opts.seed, h1, &targets.q[0]),
            Some(prev) => (prev.lines.last().unwrap().clone(), prev.points.last().unwrap().clone()),
        };
        let tag = |e: ConstructionError| match e {
            ConstructionError::PreconditionViolated(m) => {
                ConstructionError::PreconditionViolated(format!("level {n}: {m}"))
            }
            other => other,
        };
        let p0p = ProjectivePoint(p0.clone());
        let new_lines = line_chain(&p0p, &ProjectiveLine(d0.clone()), &ints_to_q(&targets.h[1..])).map_err(tag)?;
        let carrier = new_lines.last().unwrap().clone();
        let new_points = point_chain(&carrier, &p0p, &ints_to_q(&targets.q[1..])).map_err(tag)?;
        let mut lines = vec![d0];
        lines.extend(new_lines.into_iter().map(|l| l.0));
        let mut points = vec![p0];
        points.extend(new_points.into_iter().map(|p| p.0));
        levels.push(Level { n, schedule, targets, lines, points });
    }
    let tail = table.level(first + depth)?;
    Ok((levels, tail))
}

fn final_target(last: &Level, tail: &LevelTargets) -> Result<TargetPoint, TargetError> {
    let p = ProjectivePoint(last.points.last().unwrap().clone());
    let (a, b) = p.affine().ok_or(TargetError::IndexOutOfRun { n: tail.n, k: 0 })?;
    let radius = rational_from_int(RADIUS_CONSTANT as i64) * rational_from_int(tail.h.last().unwrap().clone())
        / rational_from_int(&tail.q[0] * &tail.q[1]);
    TargetPoint::new(a, b, radius, Provenance::ConstructedRun)
}

/// Smallest `h1` above `given` for which the first levels can be built.
fn suggest_h1(plan: &LevelPlan, given: &BigInt, depth: usize, opts: &RunOptions) -> BigInt {
    let probe = depth.min(2);
    let ok = |h: &BigInt| build_levels(plan, h, probe, opts).is_ok();
    let mut h = given + 1;
    for _ in 0..4096 {
        if ok(&h) {
            return h;
        }
        h += 1;
    }
    for _ in 0..32 {
        h *= 2;
        if ok(&h) {
            return h;
        }
    }
    BigInt::zero()
}

/// Runs the construction for `depth` levels from the initial height `h1`.
pub fn run_construction(
    params: &ConstructionParams,
    h1: &BigInt,
    depth: usize,
) -> Result<ConstructionRun, ConstructionError> {
    run_construction_with(params, h1, depth, &RunOptions::default())
}

pub fn run_construction_with(
    params: &ConstructionParams,
    h1: &BigInt,
    depth: usize,
    opts: &RunOptions,
) -> Result<ConstructionRun, ConstructionError> {
    if depth == 0 {
        return Err(ConstructionError::ZeroDepth);
    }
    let plan = LevelPlan::new(params)?;
    if h1 < &BigInt::from(2) {
        return Err(ConstructionError::InitialHeightTooSmall {
            given: h1.clone(),
            suggested: suggest_h1(&plan, &BigInt::one(), depth, opts),
            reason: "h1 must be at least 2".into(),
        });
    }
    let (levels, tail) = match build_levels(&plan, h1, depth, opts) {
        Ok(x) => x,
        Err(ConstructionError::PreconditionViolated(reason)) => {
            return Err(ConstructionError::InitialHeightTooSmall {
                given: h1.clone(),
                suggested: suggest_h1(&plan, h1, depth, opts),
                reason,
            })
        }
        Err(e) => return Err(e),
    };
    let target = final_target(levels.last().unwrap(), &tail)
        .map_err(|e| ConstructionError::CertificateViolation(e.to_string()))?;
    let mut run = ConstructionRun {
        schema: RUN_SCHEMA.to_string(),
        params: params.clone(),
        h1: h1.clone(),
        depth,
        seed: opts.seed,
        predicted: predict_quadruple(params)?,
        radius_constant: RADIUS_CONSTANT,
        levels,
        tail,
        target,
        certificates: Vec::new(),
        empirical: Vec::new(),
    };
    run.certificates = certify(&run);
    if let Some(bad) = run.certificates.iter().find(|c| !c.holds) {
        return Err(ConstructionError::CertificateViolation(bad.name.clone()));
    }
    run.empirical = empirical_constants(&run);
    Ok(run)
}

impl ConstructionRun {
    pub fn first_level(&self) -> usize {
        self.levels[0].n
    }

    pub fn last_level(&self) -> &Level {
        self.levels.last().unwrap()
    }

    pub fn level(&self, n: usize) -> Option<&Level> {
        n.checked_sub(self.first_level()).and_then(|i| self.levels.get(i))
    }

    /// Target centered at `P_{n,k}` with radius `C h_{n+1}/(q_{n,k} q_{n,k+1})`.
    /// The index after the last level, `(N+1, 0)`, is the final target.
    pub fn target_at(&self, n: usize, k: usize) -> Result<TargetPoint, TargetError> {
        let out = TargetError::IndexOutOfRun { n, k };
        if n == self.tail.n && k == 0 {
            return Ok(self.target.clone());
        }
        let level = self.level(n).ok_or(out.clone())?;
        if k + 1 >= level.points.len() {
            if k + 1 == level.points.len() && n + 1 == self.tail.n {
                return Ok(self.target.clone());
            }
            return match self.level(n + 1) {
                Some(_) if k + 1 == level.points.len() => self.target_at(n + 1, 0),
                _ => Err(out),
            };
        }
        let p = ProjectivePoint(level.points[k].clone());
        let (a, b) = p.affine().ok_or(out)?;
        let h_next = rational_from_int(level.targets.h.last().unwrap().clone());
        let radius = rational_from_int(self.radius_constant as i64) * h_next
            / rational_from_int(&level.targets.q[k] * &level.targets.q[k + 1]);
        TargetPoint::new(a, b, radius, Provenance::ConstructedRun)
    }

    /// Every stored point `P_{n,k}` in order, the shared branch points once.
    pub fn all_points(&self) -> Vec<(usize, usize, &IntegerTriple)> {
        let mut out = Vec::new();
        for level in &self.levels {
            for (k, p) in level.points.iter().enumerate() {
                if k + 1 < level.points.len() {
                    out.push((level.n, k, p));
                }
            }
        }
        let last = self.last_level();
        out.push((self.tail.n, 0, last.points.last().unwrap()));
        out
    }

    /// Every stored line `Δ_{n,k}` in order, the shared branch lines once.
    pub fn all_lines(&self) -> Vec<(usize, usize, &IntegerTriple)> {
        let mut out = Vec::new();
        for level in &self.levels {
            for (k, l) in level.lines.iter().enumerate() {
                if k + 1 < level.lines.len() {
                    out.push((level.n, k, l));
                }
            }
        }
        let last = self.last_level();
        out.push((self.tail.n, 0, last.lines.last().unwrap()));
        out
    }

    /// Recomputes every certificate from the stored data.
    pub fn recompute_certificates(&self) -> Vec<Certificate> {
        certify(self)
    }
}

/// Exact checks re-derived from the stored parameters and triples only.
pub fn certify(run: &ConstructionRun) -> Vec<Certificate> {
    let mut out = Vec::new();
    out.push(Certificate::equality("schema".into(), run.schema == RUN_SCHEMA));
    let plan = match LevelPlan::new(&run.params) {
        Ok(p) => p,
        Err(e) => {
            out.push(Certificate::equality(format!("parameters valid ({e})"), false));
            return out;
        }
    };
    let predicted_ok = predict_quadruple(&run.params).map(|q| q == run.predicted).unwrap_or(false);
    out.push(Certificate::equality("predicted quadruple matches parameters".into(), predicted_ok));
    out.push(Certificate::equality("level count equals depth".into(), run.levels.len() == run.depth && run.depth > 0));
    if run.levels.is_empty() {
        return out;
    }
    let mut table = HeightTable::new(&plan, &run.h1, u64::MAX);
    let first = plan.first_level();
    let two = rational_from_int(2);

    for (i, level) in run.levels.iter().enumerate() {
        let n = first + i;
        let tag = format!("level {n}");
        out.push(Certificate::equality(format!("{tag}: index"), level.n == n));
        let schedule_ok = plan.level(n).map(|s| s == level.schedule).unwrap_or(false);
        out.push(Certificate::equality(format!("{tag}: schedule matches parameters"), schedule_ok));
        let targets_ok = table.level(n).map(|t| t == level.targets).unwrap_or(false);
        out.push(Certificate::equality(format!("{tag}: height targets match recurrences"), targets_ok));
        let shape_ok = level.lines.len() == level.targets.h.len()
            && level.points.len() == level.targets.q.len()
            && level.lines.len() >= 2
            && level.points.len() >= 2;
        out.push(Certificate::equality(format!("{tag}: shape"), shape_ok));
        if !shape_ok {
            continue;
        }

        for (k, l) in level.lines.iter().enumerate() {
            out.push(Certificate::equality(format!("{tag}: D{k} primitive and sign-normalized"), l.is_canonical()));
        }
        for (k, p) in level.points.iter().enumerate() {
            out.push(Certificate::equality(format!("{tag}: P{k} primitive and sign-normalized"), p.is_canonical()));
        }

        // heights within a factor 2 of the targets
        for (k, (l, h)) in level.lines.iter().zip(&level.targets.h).enumerate() {
            let (hl, h) = (rational_from_int(l.norm()), rational_from_int(h.clone()));
            out.push(Certificate::new(format!("{tag}: H(D{k}) >= h/2"), &hl - &h / &two));
            out.push(Certificate::new(format!("{tag}: H(D{k}) <= 2h"), &two * &h - &hl));
        }
        for (k, (p, q)) in level.points.iter().zip(&level.targets.q).enumerate() {
            let (hp, q) = (rational_from_int(p.norm()), rational_from_int(q.clone()));
            out.push(Certificate::new(format!("{tag}: H(P{k}) >= q/2"), &hp - &q / &two));
            out.push(Certificate::new(format!("{tag}: H(P{k}) <= 2q"), &two * &q - &hp));
        }

        // incidences
        let p0 = &level.points[0];
        let carrier = level.lines.last().unwrap();
        for (k, l) in level.lines.iter().enumerate() {
            out.push(Certificate::equality(format!("{tag}: P0 on D{k}"), dot(p0.coords(), l.coords()).is_zero()));
        }
        for (k, p) in level.points.iter().enumerate() {
            out.push(Certificate::equality(
                format!("{tag}: P{k} on next base line"),
                dot(p.coords(), carrier.coords()).is_zero(),
            ));
        }

        // explicit chain constants and Liouville bounds
        let mut hq = vec![rational_from_int(level.lines[0].norm())];
        hq.extend(ints_to_q(&level.targets.h[1..]));
        for c in chain_checks(&p0.norm(), &level.lines, &hq, raw_dist, "D") {
            out.push(Certificate::new(format!("{tag}: line chain {}", c.what), c.slack));
        }
        let mut qq = vec![rational_from_int(p0.norm())];
        qq.extend(ints_to_q(&level.targets.q[1..]));
        for c in chain_checks(&carrier.norm(), &level.points, &qq, raw_dist, "P") {
            out.push(Certificate::new(format!("{tag}: point chain {}", c.what), c.slack));
        }

        // the chains are reproduced by their recipe
        let lines_again = line_chain(&ProjectivePoint(p0.clone()), &ProjectiveLine(level.lines[0].clone()), &hq[1..]);
        let lines_ok = matches!(&lines_again, Ok(v) if v.iter().map(|l| &l.0).eq(level.lines[1..].iter()));
        out.push(Certificate::equality(format!("{tag}: lines reproduce"), lines_ok));
        let points_again = point_chain(&ProjectiveLine(carrier.clone()), &ProjectivePoint(p0.clone()), &qq[1..]);
        let points_ok = matches!(&points_again, Ok(v) if v.iter().map(|p| &p.0).eq(level.points[1..].iter()));
        out.push(Certificate::equality(format!("{tag}: points reproduce"), points_ok));

        // branching with the previous level, or the seed
        match i {
            0 => {
                let (d, p) = seed(run.seed, &run.h1, &level.targets.q[0]);
                out.push(Certificate::equality(format!("{tag}: seed line"), level.lines[0] == d));
                out.push(Certificate::equality(format!("{tag}: seed point"), level.points[0] == p));
            }
            _ => {
                let prev = &run.levels[i - 1];
                out.push(Certificate::equality(
                    format!("{tag}: D0 equals previous last line"),
                    prev.lines.last() == level.lines.first(),
                ));
                out.push(Certificate::equality(
                    format!("{tag}: P0 equals previous last point"),
                    prev.points.last() == level.points.first(),
                ));
                out.push(Certificate::equality(
                    format!("{tag}: branching heights"),
                    prev.targets.h.last() == level.targets.h.first()
                        && prev.targets.q.last() == level.targets.q.first(),
                ));
            }
        }
    }

    let tail_ok = table.level(first + run.levels.len()).map(|t| t == run.tail).unwrap_or(false);
    out.push(Certificate::equality("tail targets match recurrences".into(), tail_ok));
    let target_ok =
        run.tail.q.len() >= 2 && final_target(run.last_level(), &run.tail).map(|t| t == run.target).unwrap_or(false);
    out.push(Certificate::equality("final target center and radius".into(), target_ok));
    out
}

fn log10_ratio(num: &BigRational, den: &BigRational) -> Option<f64> {
    if !num.is_positive() || !den.is_positive() {
        return None;
    }
    let (lo, hi) = ln_enclosure_rational(&(num / den));
    Some(0.5 * (lo + hi) / std::f64::consts::LN_10)
}

fn push_range(out: &mut Vec<EmpiricalConstant>, name: &str, level: usize, vals: Vec<f64>) {
    if vals.is_empty() {
        return;
    }
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    out.push(EmpiricalConstant { name: name.into(), level, log10_min: min, log10_max: max });
}

/// Ranges of the implied constants of the distance and semi-norm estimates,
/// the latter evaluated at the final target center.
pub fn empirical_constants(run: &ConstructionRun) -> Vec<EmpiricalConstant> {
    let mut out = Vec::new();
    let (a, b) = (&run.target.alpha, &run.target.beta);
    for level in &run.levels {
        let (h, q) = (ints_to_q(&level.targets.h), ints_to_q(&level.targets.q));
        let h_next = h.last().unwrap().clone();
        let mut pd = Vec::new();
        for k in 0..level.points.len() {
            for kp in k + 1..level.points.len() {
                let model = &h_next / (&q[k] * &q[k + 1]);
                pd.extend(log10_ratio(&raw_dist(level.points[k].coords(), level.points[kp].coords()), &model));
            }
        }
        push_range(&mut out, "point distance / (h_{n+1}/(q_k q_{k+1}))", level.n, pd);
        let mut ld = Vec::new();
        for k in 0..level.lines.len() {
            for kp in k + 1..level.lines.len() {
                let model = &q[0] / (&h[k] * &h[k + 1]);
                ld.extend(log10_ratio(&raw_dist(level.lines[k].coords(), level.lines[kp].coords()), &model));
            }
        }
        push_range(&mut out, "line distance / (q_{n,0}/(h_k h_{k+1}))", level.n, ld);
        let mut m = Vec::new();
        for k in 0..level.points.len() - 1 {
            let val = sim_form_at(level.points[k].coords(), a, b);
            m.extend(log10_ratio(&val, &(&h_next / &q[k + 1])));
        }
        push_range(&mut out, "M(P_k) / (h_{n+1}/q_{k+1})", level.n, m);
        let mut l = Vec::new();
        for k in 0..level.lines.len() - 1 {
            let val = linear_form_at(level.lines[k].coords(), a, b).abs();
            l.extend(log10_ratio(&val, &(&h_next / (&h[k + 1] * &q[1]))));
        }
        push_range(&mut out, "L(D_k) / (h_{n+1}/(h_{k+1} q_1))", level.n, l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{dist_points, vec3};
    use crate::num::{parse_rational, ExtReal};

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn reference(depth: usize) -> ConstructionRun {
        let params = ConstructionParams::finite(q("3"), q("1/2"), q("1"), q("3/2"));
        run_construction(&params, &BigInt::from(20), depth).unwrap()
    }

    #[test]
    fn reference_run_certifies() {
        let run = reference(3);
        assert_eq!(run.levels.len(), 3);
        assert!(run.certificates.iter().all(|c| c.holds));
        assert_eq!(run.levels[0].lines[0].coords(), &vec3(20, -1, 0));
        assert_eq!(run.levels[0].points[0].coords(), &vec3(1, 20, 500));
        assert_eq!(run.levels[0].targets.q, vec![BigInt::from(500), BigInt::from(4_000_000)]);
        assert_eq!(certify(&run), run.certificates);
    }

    #[test]
    fn smallest_run() {
        let run = reference(1);
        assert_eq!(run.levels.len(), 1);
        assert!(run.certificates.iter().all(|c| c.holds));
        assert_eq!(run.tail.n, 2);
    }

    #[test]
    fn too_small_h1_suggests_a_working_one() {
        let params = ConstructionParams::finite(q("3"), q("1/2"), q("1"), q("3/2"));
        let e = run_construction(&params, &BigInt::from(10), 3).unwrap_err();
        match e {
            ConstructionError::InitialHeightTooSmall { suggested, reason, .. } => {
                assert!(reason.contains("14"), "{reason}");
                assert!(suggested > BigInt::from(10));
                assert!(run_construction(&params, &suggested, 2).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn run_targets_contain_later_points() {
        let run = reference(4);
        let pts = run.all_points();
        for (i, &(n, k, _)) in pts.iter().enumerate() {
            let t = run.target_at(n, k).unwrap();
            let (a, b) = (&t.alpha, &t.beta);
            let center = ProjectivePoint(
                IntegerTriple::normalize(&[a.numer() * b.denom(), b.numer() * a.denom(), a.denom() * b.denom()])
                    .unwrap(),
            );
            for &(_, _, later) in &pts[i + 1..] {
                let d = dist_points(&center, &ProjectivePoint(later.clone()));
                assert!(d <= t.radius, "({n},{k})");
            }
        }
        let deepest = run.target_at(run.tail.n, 0).unwrap();
        assert!(deepest.radius < q("1/100000000000000000000"));
        assert!(run.target_at(99, 0).is_err());
    }

    #[test]
    fn swapped_seed_also_certifies() {
        let params = ConstructionParams::finite(q("3"), q("1/2"), q("1"), q("3/2"));
        let opts = RunOptions { seed: SeedChoice::Swapped, ..RunOptions::default() };
        let run = run_construction_with(&params, &BigInt::from(20), 2, &opts).unwrap();
        assert!(run.certificates.iter().all(|c| c.holds));
        assert_eq!(run.levels[0].points[0].coords(), &vec3(20, 1, 500));
    }

    #[test]
    fn infinite_modes_run() {
        for params in [
            ConstructionParams::AllInfinite,
            ConstructionParams::VInfinite { w: q("3"), v_prime: ExtReal::Finite(q("4")) },
            ConstructionParams::VInfinite { w: q("2"), v_prime: ExtReal::PosInf },
        ] {
            let run = run_construction(&params, &BigInt::from(20), 2).unwrap();
            assert!(run.certificates.iter().all(|c| c.holds), "{params:?}");
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(reference(3), reference(3));
    }
}
