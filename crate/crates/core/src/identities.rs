//! Closed-form conformance suite.
//!
//! Each check compares a direct computation against a printed closed form or
//! an algebraic identity. Direct computation is authoritative: a mismatch
//! with a closed form whose printed shape is known to be ambiguous is a
//! warning, every other mismatch is a failure.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::bundle::{basic_condition_value, ell, ell_via_adjoint, in_ad_h_p, normalize_fiber, random_sp2_at, sample_rng};
use crate::error::Result;
use crate::frames::{self, build_frame, classify, closed, commutator_table, u_basis, u_basis_case_ii};
use crate::qmat::{ad, real_rank, QMat2, Sp2Alg, Sp2Point};
use crate::quat::Quaternion;
use crate::sample::{exact_sample, imaginary, nonzero_rat, small_rat};
use crate::scalar::{Rational, Scalar};

type Q = Quaternion<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub status: Status,
    pub samples: usize,
    /// Largest absolute entry of `direct - closed` (0 on exact checks that pass).
    pub worst_deviation: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub schema: u32,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<5} {:<42} n={:<5} worst={:.3e} {}",
                format!("{:?}", c.status).to_uppercase(),
                c.name,
                c.samples,
                c.worst_deviation,
                c.detail
            );
        }
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Checks whose printed closed form is typographically ambiguous; a mismatch
/// there is reported as a warning.
const CATALOGUED: [&str; 2] = ["commutator [u0,uj] = M(v) diag(j,j)", "commutator [u0,uk] = M(v) diag(k,k)"];

struct Tally {
    name: String,
    samples: usize,
    worst: f64,
    misses: Vec<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Self { name: name.into(), samples: 0, worst: 0.0, misses: Vec::new() }
    }

    fn record(&mut self, ok: bool, deviation: f64, what: impl FnOnce() -> String) {
        self.samples += 1;
        self.worst = self.worst.max(deviation);
        if !ok && self.misses.len() < 3 {
            self.misses.push(what());
        }
    }

    fn mat<S: Scalar>(&mut self, direct: &QMat2<S>, closed: &QMat2<S>, at: impl FnOnce() -> String) {
        let dev = direct.max_deviation(closed);
        self.record(direct == closed, dev, || format!("at {}: direct {direct} vs closed {closed}", at()));
    }

    fn quat<S: Scalar>(&mut self, direct: &Quaternion<S>, closed: &Quaternion<S>, at: impl FnOnce() -> String) {
        let dev = (direct - closed).norm_sq().to_f64().sqrt();
        self.record(direct == closed, dev, || format!("at {}: direct {direct} vs closed {closed}", at()));
    }

    fn finish(self, failed_any: &mut bool) -> IdentityCheck {
        let status = if self.misses.is_empty() {
            Status::Pass
        } else if CATALOGUED.contains(&self.name.as_str()) {
            Status::Warn
        } else {
            *failed_any = true;
            Status::Fail
        };
        IdentityCheck {
            name: self.name,
            status,
            samples: self.samples,
            worst_deviation: self.worst,
            detail: self.misses.join("; "),
        }
    }
}

/// Admissible `v`: `v1 != 0` and `v^2 != -1`.
pub fn admissible_vs(seed: u64, n: usize) -> Vec<Q> {
    let mut rng = sample_rng(seed, u64::MAX);
    let mut out = vec![Q::from_ints(1, 1, 0, 0), Q::complex(<Rational as Scalar>::from_ratio(2, 3), <Rational as Scalar>::from_ratio(5, 7))];
    while out.len() < n {
        let v = Q::complex(small_rat(&mut rng), nonzero_rat(&mut rng));
        if !(&(&v * &v) + &Q::one()).is_zero(0.0) {
            out.push(v);
        }
    }
    out
}

fn random_alg<R: Rng>(rng: &mut R) -> Sp2Alg<Rational> {
    let beta = Q::new(small_rat(rng), small_rat(rng), small_rat(rng), small_rat(rng));
    Sp2Alg::from_blocks(imaginary(rng), beta, imaginary(rng))
}

fn half_over_norm(v: &Q) -> Q {
    Q::real(<Rational as Scalar>::one() / (<Rational as Scalar>::from_i64(2) * v.norm_sq()))
}

/// Runs the whole suite: `triples` random points for the Ad checks, `n_v`
/// admissible `v` for the closed forms, `n_points` points for the structural
/// checks.
pub fn cmd_identities(seed: u64, triples: usize, n_v: usize, n_points: usize) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    let mut failed = false;

    // Ad-invariance of the inner product and Ad as a Lie algebra homomorphism.
    let mut inv = Tally::new("Ad-invariance of <u,w>");
    let mut hom = Tally::new("Ad_p [u,w] = [Ad_p u, Ad_p w]");
    let mut grp = Tally::new("Ad_p Ad_q = Ad_pq");
    for i in 0..triples as u64 {
        let p = exact_sample(seed, i)?;
        let q = exact_sample(seed ^ 0x5eed, i)?;
        let mut rng = sample_rng(seed, i + (1 << 40));
        let (u, w) = (random_alg(&mut rng), random_alg(&mut rng));
        let lhs = ad(&p, &u).inner(&ad(&p, &w));
        let rhs = u.inner(&w);
        inv.record(lhs == rhs, (lhs.clone() - rhs.clone()).to_f64().abs(), || format!("sample {i}: {lhs} vs {rhs}"));
        hom.mat(ad(&p, &u.bracket(&w)).matrix(), ad(&p, &u).bracket(&ad(&p, &w)).matrix(), || format!("sample {i}"));
        grp.mat(ad(&p, &ad(&q, &u)).matrix(), ad(&p.compose(&q), &u).matrix(), || format!("sample {i}"));
    }
    for t in [inv, hom, grp] {
        checks.push(t.finish(&mut failed));
    }

    // Closed forms in v.
    let vs = admissible_vs(seed, n_v);
    let names = [
        "commutator [u0,ui] = C(v) diag(i,i)",
        "commutator [u0,uj] = M(v) diag(j,j)",
        "commutator [u0,uk] = M(v) diag(k,k)",
        "commutator [ui,uj] = B(v) diag(k,k)",
        "commutator [ui,uk] = -B(v) diag(j,j)",
    ];
    let mut comm: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    let mut trace = Tally::new("Tr U_j = Tr U_k = 0");
    let mut alpha2 = Tally::new("alpha: single fraction = two terms");
    let mut ubasis = Tally::new("u_i, u_j, u_k closed forms");
    let mut s12 = Tally::new("s12 = v (1 - conj(v)^2) / (2|v|^2)");
    let mut t11 = Tally::new("t11 closed forms");
    let mut t12 = Tally::new("t12 closed forms");
    let mut nondeg = Tally::new("-t11 s12 + t12 factorisation");
    let mut nonzero = Tally::new("-t11 s12 + t12 != 0");
    for v in &vs {
        let at = || format!("v = {v}");
        for (row, t) in commutator_table(v, 0.0)?.iter().zip(comm.iter_mut()) {
            t.mat(&row.direct, &row.closed, at);
        }
        let (cap_uj, cap_uk) = frames::u_jk(v)?;
        let tr_ok = cap_uj.trace().is_zero(0.0) && cap_uk.trace().is_zero(0.0);
        let tr_dev = cap_uj.trace().norm_sq().to_f64().max(cap_uk.trace().norm_sq().to_f64()).sqrt();
        trace.record(tr_ok, tr_dev, at);
        alpha2.quat(&closed::alpha_single(v)?, &closed::alpha_two_term(v)?, at);

        let [_, ui, uj, uk] = u_basis(v)?;
        let one = Q::one();
        let n = Q::real(v.norm_sq());
        let c = &(&(&one - &n) * &half_over_norm(v)) * v;
        let ui_closed = &QMat2::new(one.clone(), c.clone(), c.conj(), -one.clone()) * &QMat2::diag(Q::i(), Q::i());
        ubasis.mat(ui.matrix(), &ui_closed, at);
        let s = closed::s_matrix(v)?;
        ubasis.mat(uj.matrix(), &(&s * &QMat2::diag(Q::j(), Q::j())), at);
        ubasis.mat(uk.matrix(), &(&s * &QMat2::diag(Q::k(), Q::k())), at);

        let s12_alt = &(v * &(&one - &(&v.conj() * &v.conj()))) * &half_over_norm(v);
        s12.quat(&closed::s12(v)?, &s12_alt, at);

        let t = frames::t_matrix(v)?;
        t11.quat(&t.a, &closed::t11_closed(v)?, at);
        t11.quat(&t.a, &closed::t11_expanded(v)?, at);
        t12.quat(&t.b, &closed::t12_closed(v)?, at);
        t12.quat(&t.b, &closed::t12_expanded(v)?, at);

        let direct = frames::nondegeneracy_direct(v)?;
        nondeg.quat(&direct, &closed::nondegeneracy(v)?, at);
        nonzero.record(!direct.is_zero(0.0), 0.0, at);
    }
    for t in comm {
        checks.push(t.finish(&mut failed));
    }
    for t in [trace, alpha2, ubasis, s12, t11, t12, nondeg, nonzero] {
        checks.push(t.finish(&mut failed));
    }

    // The same closed forms on random float v, at relative tolerance 1e-12.
    let mut float_comm = Tally::new("commutator closed forms (float)");
    for i in 0..n_v as u64 {
        let p = random_sp2_at(seed, i)?;
        let (pn, _) = normalize_fiber(&p, 1e-9)?;
        let Some(v) = classify(&pn, 1e-9)?.v else { continue };
        for row in commutator_table(&v, 1e-12)? {
            float_comm.record(row.matches, row.deviation, || format!("{} at v = {v}", row.name));
        }
    }
    checks.push(float_comm.finish(&mut failed));

    checks.push(standard_sphere_commutators().finish(&mut failed));
    checks.push(ib_displays()?.finish(&mut failed));

    // Structural checks at exact points.
    let mut dual = Tally::new("ell_rho: formula = rho Id - p rho+ p*");
    let mut dim = Tally::new("dim Ad_p(h_p) = 4");
    let mut member = Tally::new("frame u-entries satisfy membership");
    let mut corner = Tally::new("(1,1) entry of Ad_p^-1(u_rho) vanishes");
    for i in 0..n_points as u64 {
        let p = exact_sample(seed, i)?;
        let mut rng = sample_rng(seed, i + (2 << 40));
        let rho = loop {
            let r = imaginary(&mut rng);
            if !r.is_zero(0.0) {
                break r;
            }
        };
        dual.mat(ell(&p, &rho, 0.0)?.matrix(), ell_via_adjoint(&p, &rho, 0.0)?.matrix(), || format!("sample {i}"));

        let (pn, _) = normalize_fiber(&p, 0.0)?;
        let (kernel, span) = horizontal_dimensions(&pn)?;
        dim.record(kernel == 4 && span == 4, 0.0, || format!("sample {i}: kernel {kernel}, span {span}"));

        let frame = build_frame(&pn, 0.0)?;
        let pinv = pn.inverse();
        for e in frame.entries.iter().filter(|e| e.role == frames::EntryRole::Horizontal) {
            let ok = in_ad_h_p(&pn, &e.m, 0.0).unwrap_or(false);
            member.record(ok, 0.0, || format!("sample {i} {}", e.label));
            let c = ad(&pinv, &e.m).matrix().a.clone();
            corner.record(c.is_zero(0.0), c.norm_sq().to_f64().sqrt(), || format!("sample {i} {}", e.label));
        }
    }
    for t in [dual, dim, member, corner] {
        checks.push(t.finish(&mut failed));
    }

    Ok(IdentityReport { schema: crate::verify::SCHEMA, seed, checks })
}

/// Dimension of the solution space of the membership condition on matrices
/// `[[a, b], [-conj(b), -a]]`, and the rank of the chosen basis.
pub fn horizontal_dimensions<S: Scalar>(p: &Sp2Point<S>) -> Result<(usize, usize)> {
    let z = Quaternion::<S>::zero;
    let mut shape = Vec::new();
    for a in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        shape.push(Sp2Alg::from_blocks(a.clone(), z(), -a));
    }
    for b in [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        shape.push(Sp2Alg::from_blocks(z(), b, z()));
    }
    let rows: Vec<Vec<S>> = shape.iter().map(|u| basic_condition_value(p, u).components().to_vec()).collect();
    let kernel = shape.len() - S::real_rank(&rows, 0.0).rank;
    let basis = match crate::bundle::fiber_v(p) {
        Some(v) => u_basis(&v)?,
        None => u_basis_case_ii(),
    };
    Ok((kernel, real_rank(&basis, 0.0).rank))
}

fn standard_sphere_commutators() -> Tally {
    let f = frames::standard_sphere_frame::<Rational>();
    let two = Q::from_ints(2, 0, 0, 0);
    let d = |a: Q, b: Q| QMat2::diag(&two * &a, &two * &b);
    let printed = [
        ("[u0,u1]", d(Q::i(), -Q::i())),
        ("[u0,u2]", d(Q::j(), -Q::j())),
        ("[u0,u3]", d(Q::k(), -Q::k())),
        ("[u1,u2]", d(Q::k(), Q::k())),
        ("[u1,u3]", d(-Q::j(), -Q::j())),
        ("[u2,u3]", d(Q::i(), Q::i())),
    ];
    let mut t = Tally::new("standard sphere commutators");
    for (label, m) in printed {
        let direct = f.get(label).expect("standard frame entry");
        t.mat(direct.matrix(), &m, || label.to_string());
    }
    t
}

fn ib_displays() -> Result<Tally> {
    let mut t = Tally::new("I-b displayed values at v = i");
    let z = Q::zero;
    let m = |a, b, c, d| QMat2::new(a, b, c, d);
    let [u0, ui, uj, uk] = u_basis(&Q::i())?;
    t.mat(ui.matrix(), &QMat2::diag(Q::i(), -Q::i()), || "u_i".into());
    t.mat(uj.matrix(), &m(Q::j(), Q::k(), Q::k(), -Q::j()), || "u_j".into());
    t.mat(uk.matrix(), &m(Q::k(), -Q::j(), -Q::j(), -Q::k()), || "u_k".into());
    let two = <Rational as Scalar>::from_i64(2);
    t.mat(u0.bracket(&ui).matrix(), &m(z(), Q::one(), -Q::one(), z()).scale(&two), || "[u0,ui]".into());
    let fi = m(Q::i(), Q::one(), -Q::one(), Q::i());
    t.mat(uj.bracket(&uk).matrix(), &fi.scale(&(two.clone() * two.clone())), || "[uj,uk]".into());
    let mhalf = <Rational as Scalar>::from_ratio(-1, 2);
    t.mat(u0.bracket(&uj).scale(&mhalf).matrix(), &QMat2::diag(Q::j(), Q::j()), || "F_j".into());

    // p = [[i w, y], [w, i y]] with w = (1 + j)/2, y = (1 + k)/2
    let h = <Rational as Scalar>::from_ratio(1, 2);
    let w = Q::new(h.clone(), <Rational as Scalar>::zero(), h.clone(), <Rational as Scalar>::zero());
    let y = Q::new(h.clone(), <Rational as Scalar>::zero(), <Rational as Scalar>::zero(), h);
    let p = Sp2Point::new(m(&Q::i() * &w, y.clone(), w.clone(), &Q::i() * &y), 0.0)?;
    let got = ad(&p.inverse(), &uj.bracket(&uk));
    let yiy = &(&y.conj() * &Q::i()) * &y;
    t.mat(got.matrix(), &QMat2::diag(z(), yiy.scale(&<Rational as Scalar>::from_i64(16))), || "Ad_p^-1 [uj,uk]".into());
    // the printed ell_rho with x = i w
    let i = Q::i();
    for rho in [Q::i(), Q::j(), Q::k()] {
        let wrw = &(&w * &rho) * &w.conj();
        let printed = m(&rho + &(&(&i * &wrw) * &i), -(&i * &wrw), &wrw * &i, &rho - &wrw);
        t.mat(ell(&p, &rho, 0.0)?.matrix(), &printed, || format!("ell_{rho}"));
    }
    t.mat(u0.matrix(), &m(z(), Q::i(), Q::i(), z()), || "u0".into());
    t.mat(u0.bracket(&uk).scale(&mhalf).matrix(), &QMat2::diag(Q::k(), Q::k()), || "F_k".into());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_small_sizes() {
        let r = cmd_identities(5, 20, 20, 20).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{}", r.to_text());
    }

    #[test]
    fn catalogued_mismatch_is_a_warning() {
        let mut t = Tally::new(CATALOGUED[0]);
        t.record(false, 1.0, || "x".into());
        let mut failed = false;
        assert_eq!(t.finish(&mut failed).status, Status::Warn);
        assert!(!failed);
        let mut t = Tally::new("other");
        t.record(false, 1.0, || "x".into());
        assert_eq!(t.finish(&mut failed).status, Status::Fail);
        assert!(failed);
    }
}
