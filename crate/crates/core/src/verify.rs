//! Verification runs and their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bundle::{normalize_fiber, random_sp2_at};
use crate::error::{Error, Result};
use crate::frames::{build_frame_for, classify, standard_sphere_frame, Case, CaseTag, Frame10};
use crate::json::{point_file, AnyPoint};
use crate::qmat::{real_rank, Sp2Point};
use crate::sample::{case_boundary_grid, exact_sample, GridPoint};
use crate::scalar::{Backend, Rational, Scalar, DEFAULT_TOL};

pub const SCHEMA: u32 = 1;

/// Float I-b points this close to the quarter threshold are tried under both
/// sub-case frames.
pub const IB_NEAR_BAND: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub backend: Backend,
    pub tol: f64,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub emit: Emit,
    pub out: Option<PathBuf>,
    /// Test hook: remove the frame entry with this label before the rank check.
    pub drop_entry: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 1000,
            backend: Backend::Float,
            tol: DEFAULT_TOL,
            jobs: 0,
            emit: Emit::Json,
            out: None,
            drop_entry: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Parse("samples must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))
    }
}

/// Result of checking one point.
#[derive(Clone, Debug, Serialize)]
pub struct SampleOutcome {
    pub index: u64,
    pub label: Option<String>,
    pub case: Option<Case>,
    pub rank: usize,
    pub min_relative_pivot: Option<f64>,
    pub certificate: Option<String>,
    pub bracket_free_rank: usize,
    pub problems: Vec<String>,
    pub point: Value,
}

impl SampleOutcome {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: u64,
    pub label: Option<String>,
    pub case: Option<Case>,
    pub rank: usize,
    pub problems: Vec<String>,
    pub point: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub backend: Backend,
    pub seed: Option<u64>,
    pub samples: usize,
    pub tol: f64,
    /// Points per case; points that could not be classified count as `unclassified`.
    pub tallies: BTreeMap<String, usize>,
    pub rank_10: usize,
    pub min_relative_pivot: Option<f64>,
    /// Smallest relative pivot per case (float runs).
    pub min_relative_pivot_by_case: BTreeMap<String, f64>,
    pub exact_certificates: usize,
    pub max_bracket_free_rank: usize,
    pub failures: Vec<Failure>,
    pub wall_time_s: f64,
}

impl VerifyReport {
    fn from_outcomes(command: &str, backend: Backend, seed: Option<u64>, tol: f64, outcomes: Vec<SampleOutcome>) -> Self {
        let mut r = VerifyReport {
            schema: SCHEMA,
            command: command.into(),
            backend,
            seed,
            samples: outcomes.len(),
            tol,
            tallies: BTreeMap::new(),
            rank_10: 0,
            min_relative_pivot: None,
            min_relative_pivot_by_case: BTreeMap::new(),
            exact_certificates: 0,
            max_bracket_free_rank: 0,
            failures: Vec::new(),
            wall_time_s: 0.0,
        };
        for o in outcomes {
            let key = o.case.map_or("unclassified".to_string(), |c| c.name().to_string());
            *r.tallies.entry(key.clone()).or_default() += 1;
            if o.rank == 10 {
                r.rank_10 += 1;
            }
            if let Some(mp) = o.min_relative_pivot {
                r.min_relative_pivot = Some(r.min_relative_pivot.map_or(mp, |m: f64| m.min(mp)));
                let e = r.min_relative_pivot_by_case.entry(key).or_insert(mp);
                *e = e.min(mp);
            }
            if o.certificate.is_some() && o.rank == 10 && backend == Backend::Exact {
                r.exact_certificates += 1;
            }
            r.max_bracket_free_rank = r.max_bracket_free_rank.max(o.bracket_free_rank);
            if !o.passed() {
                r.failures.push(Failure {
                    index: o.index,
                    label: o.label,
                    case: o.case,
                    rank: o.rank,
                    problems: o.problems,
                    point: o.point,
                });
            }
        }
        r
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without its timing field; equal runs give equal strings.
    pub fn canonical_json(&self) -> String {
        let mut v = self.to_json();
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_time_s");
        }
        serde_json::to_string(&v).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} ({} backend): {} points, {} with rank 10", self.command, self.backend, self.samples, self.rank_10);
        for (case, n) in &self.tallies {
            let piv = self
                .min_relative_pivot_by_case
                .get(case)
                .map(|p| format!(", min relative pivot {p:.3e}"))
                .unwrap_or_default();
            let _ = writeln!(s, "  {case:<14} {n}{piv}");
        }
        if let Some(p) = self.min_relative_pivot {
            let _ = writeln!(s, "min relative pivot: {p:.3e}");
        }
        if self.backend == Backend::Exact {
            let _ = writeln!(s, "exact rank certificates: {}", self.exact_certificates);
        }
        let _ = writeln!(s, "max rank without bracket entries: {}", self.max_bracket_free_rank);
        for f in &self.failures {
            let _ = writeln!(s, "FAIL #{} {}: {}", f.index, f.label.as_deref().unwrap_or(""), f.problems.join("; "));
        }
        let _ = writeln!(s, "{} in {:.2}s", if self.passed() { "PASS" } else { "FAIL" }, self.wall_time_s);
        s
    }
}

struct FrameCheck {
    rank: crate::rank::RankReport,
    bracket_free_rank: usize,
    problems: Vec<String>,
}

fn check_frame<S: Scalar>(p: &Sp2Point<S>, frame: &Frame10<S>, tol: f64) -> FrameCheck {
    let rank = frame.rank(tol);
    let bracket_free_rank = real_rank(&frame.without_brackets(), tol).rank;
    let mut problems = frame.check_invariants(p, tol);
    if rank.rank != 10 {
        problems.push(format!("frame rank {} < 10", rank.rank));
    }
    if bracket_free_rank > 7 {
        problems.push(format!("rank without bracket entries is {bracket_free_rank} > 7"));
    }
    FrameCheck { rank, bracket_free_rank, problems }
}

/// Normalises, classifies, builds the frame and checks it at one point.
pub fn evaluate_point<S: Scalar>(
    index: u64,
    label: Option<String>,
    p: &Sp2Point<S>,
    expected: Option<Case>,
    cfg: &RunConfig,
) -> SampleOutcome {
    let tol = if S::is_exact() { 0.0 } else { cfg.tol };
    let mut out = SampleOutcome {
        index,
        label,
        case: None,
        rank: 0,
        min_relative_pivot: None,
        certificate: None,
        bracket_free_rank: 0,
        problems: Vec::new(),
        point: point_file(p),
    };
    let tag = match normalize_fiber(p, tol).and_then(|(pn, _)| classify(&pn, tol).map(|t| (pn, t))) {
        Ok(t) => t,
        Err(e) => {
            out.problems.push(format!("normalisation: {e}"));
            return out;
        }
    };
    let (pn, tag) = tag;
    out.case = Some(tag.case);
    if let Some(exp) = expected.filter(|e| *e != tag.case) {
        out.problems.push(format!("classified as {}, expected {exp}", tag.case));
    }

    let mut candidates = vec![tag.clone()];
    if !S::is_exact() {
        if let Some(split) = &tag.ib_split {
            if (split.to_f64() - 0.25).abs() <= IB_NEAR_BAND {
                let other = if tag.case == Case::IbQuarter { Case::IbNonQuarter } else { Case::IbQuarter };
                candidates.push(CaseTag { case: other, ..tag.clone() });
            }
        }
    }

    let mut first: Option<FrameCheck> = None;
    for cand in &candidates {
        let frame = match build_frame_for(&pn, cand) {
            Ok(f) => f,
            Err(e) => {
                out.problems.push(format!("frame ({}): {e}", cand.case));
                return out;
            }
        };
        let frame = match &cfg.drop_entry {
            Some(l) => frame.without(l),
            None => frame,
        };
        let check = check_frame(&pn, &frame, tol);
        let ok = check.problems.is_empty();
        if ok || first.is_none() {
            first = Some(check);
        }
        if ok {
            break;
        }
    }
    let check = first.expect("at least one candidate frame");
    out.rank = check.rank.rank;
    out.min_relative_pivot = check.rank.min_relative_pivot;
    out.certificate = check.rank.certificate;
    out.bracket_free_rank = check.bracket_free_rank;
    out.problems.extend(check.problems);
    out
}

fn timed<F: FnOnce() -> Result<VerifyReport>>(f: F) -> Result<VerifyReport> {
    let t = Instant::now();
    let mut r = f()?;
    r.wall_time_s = t.elapsed().as_secs_f64();
    Ok(r)
}

fn sample_outcome(cfg: &RunConfig, index: u64) -> SampleOutcome {
    match cfg.backend {
        Backend::Float => match random_sp2_at(cfg.seed, index) {
            Ok(p) => evaluate_point(index, None, &p, None, cfg),
            Err(e) => draw_failure(index, e),
        },
        Backend::Exact => match exact_sample(cfg.seed, index) {
            Ok(p) => evaluate_point::<Rational>(index, None, &p, None, cfg),
            Err(e) => draw_failure(index, e),
        },
    }
}

fn draw_failure(index: u64, e: Error) -> SampleOutcome {
    SampleOutcome {
        index,
        label: None,
        case: None,
        rank: 0,
        min_relative_pivot: None,
        certificate: None,
        bracket_free_rank: 0,
        problems: vec![format!("sampling: {e}")],
        point: Value::Null,
    }
}

/// Random sweep: Haar points on the float backend, rational points on the exact one.
pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    timed(|| {
        let outcomes: Vec<SampleOutcome> = cfg
            .pool()?
            .install(|| (0..cfg.samples as u64).into_par_iter().map(|i| sample_outcome(cfg, i)).collect());
        Ok(VerifyReport::from_outcomes("verify", cfg.backend, Some(cfg.seed), cfg.tol, outcomes))
    })
}

/// Deterministic sweep over every case class and the boundaries between them.
pub fn cmd_special_sweep(cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    timed(|| {
        let grid = case_boundary_grid()?;
        let outcomes: Vec<SampleOutcome> = cfg.pool()?.install(|| {
            grid.par_iter()
                .enumerate()
                .map(|(i, sp)| {
                    let (i, label, exp) = (i as u64, Some(sp.label.clone()), Some(sp.expected));
                    match (&sp.point, cfg.backend) {
                        (GridPoint::Rational(p), Backend::Exact) => evaluate_point(i, label, p, exp, cfg),
                        (GridPoint::Sqrt2(p), Backend::Exact) => evaluate_point(i, label, p, exp, cfg),
                        (GridPoint::Rational(p), Backend::Float) => float_of(i, label, p.to_float(cfg.tol), exp, cfg),
                        (GridPoint::Sqrt2(p), Backend::Float) => float_of(i, label, p.to_float(cfg.tol), exp, cfg),
                    }
                })
                .collect()
        });
        Ok(VerifyReport::from_outcomes("special-sweep", cfg.backend, None, cfg.tol, outcomes))
    })
}

fn float_of(i: u64, label: Option<String>, p: Result<Sp2Point<f64>>, exp: Option<Case>, cfg: &RunConfig) -> SampleOutcome {
    match p {
        Ok(p) => evaluate_point(i, label, &p, exp, cfg),
        Err(e) => draw_failure(i, e),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StandardSphereReport {
    pub schema: u32,
    pub rank: usize,
    pub u_rank: usize,
    pub bracket_rank: usize,
    pub certificate: Option<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

impl StandardSphereReport {
    pub fn passed(&self) -> bool {
        self.rank == 10 && self.u_rank == 4 && self.bracket_rank == 6
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (label, row) in &self.rows {
            let _ = writeln!(s, "{label:>8}  [{}]", row.join(", "));
        }
        let _ = writeln!(
            s,
            "rank {} (horizontal {}, brackets {}), certificate {}",
            self.rank,
            self.u_rank,
            self.bracket_rank,
            self.certificate.as_deref().unwrap_or("-")
        );
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Four horizontal directions at the identity and their six brackets, over the rationals.
pub fn cmd_standard_sphere() -> StandardSphereReport {
    let f = standard_sphere_frame::<Rational>();
    let rank = f.rank(0.0);
    let (us, brackets): (Vec<_>, Vec<_>) = f.entries.iter().partition(|e| e.label.len() == 2);
    let rank_of = |es: &[&crate::frames::FrameEntry<Rational>]| {
        real_rank(&es.iter().map(|e| e.m.clone()).collect::<Vec<_>>(), 0.0).rank
    };
    StandardSphereReport {
        schema: SCHEMA,
        rank: rank.rank,
        u_rank: rank_of(&us),
        bracket_rank: rank_of(&brackets),
        certificate: rank.certificate,
        rows: f
            .entries
            .iter()
            .map(|e| (e.label.to_string(), e.m.to_vec10().0.iter().map(|x| x.to_string()).collect()))
            .collect(),
    }
}

/// Frame report for a single point: normalised point, case, frame, rank.
pub fn cmd_frame(point: &AnyPoint, tol: f64) -> Result<Value> {
    match point {
        AnyPoint::Rational(p) => frame_report(p, 0.0),
        AnyPoint::Sqrt2(p) => frame_report(p, 0.0),
        AnyPoint::Float(p) => frame_report(p, tol),
    }
}

fn frame_report<S: Scalar>(p: &Sp2Point<S>, tol: f64) -> Result<Value> {
    let (pn, _) = normalize_fiber(p, tol)?;
    let tag = classify(&pn, tol)?;
    let frame = build_frame_for(&pn, &tag)?;
    let rank = frame.rank(tol);
    let problems = frame.check_invariants(&pn, tol);
    Ok(json!({
        "schema": SCHEMA,
        "backend": S::BACKEND,
        "normalized_point": point_file(&pn),
        "v": tag.v.as_ref().map(|v| v.to_json()),
        "ib_split": tag.ib_split.as_ref().map(Scalar::to_json),
        "frame": frame.to_json(&rank),
        "certificate": rank.certificate,
        "min_relative_pivot": rank.min_relative_pivot,
        "invariant_violations": problems,
        "passed": rank.rank == 10 && problems.is_empty(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(backend: Backend, samples: usize) -> RunConfig {
        RunConfig { backend, samples, seed: 3, jobs: 2, ..RunConfig::default() }
    }

    #[test]
    fn small_runs_pass() {
        let r = cmd_verify(&cfg(Backend::Float, 200)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.rank_10, 200);
        let r = cmd_verify(&cfg(Backend::Exact, 30)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.exact_certificates, 30);
        assert_eq!(r.tallies.values().sum::<usize>(), 30);
    }

    #[test]
    fn dropping_u_j_fails() {
        let c = RunConfig { drop_entry: Some("U_j".into()), ..cfg(Backend::Float, 1) };
        let r = cmd_verify(&c).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures[0].rank, 9);
    }

    #[test]
    fn config_validation() {
        assert!(cfg(Backend::Float, 0).validate().is_err());
        assert!(RunConfig { tol: 0.0, ..cfg(Backend::Float, 1) }.validate().is_err());
    }

    #[test]
    fn standard_sphere() {
        let r = cmd_standard_sphere();
        assert!(r.passed());
        assert_eq!(r.rows.len(), 10);
    }
}
