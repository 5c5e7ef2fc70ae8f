//! Case classification and the ten-element spanning frames.
//!
//! Everything here lives in `Ad_p`-coordinates: the horizontal basis
//! `u_0, u_i, u_j, u_k` spans `Ad_p(h_p)`, the `ell_rho` are the images of the
//! vertical directions of the diagonal action, and one layer of brackets
//! supplies the remaining three directions. A frame certifies the step-2
//! bracket-generating property at `p` exactly when its real rank is 10.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bundle::{self, basic_condition_value, ell, in_ad_h_p};
use crate::error::{Error, Result};
use crate::qmat::{ad, real_rank, QMat2, Sp2Alg, Sp2Point};
use crate::quat::Quaternion;
use crate::rank::RankReport;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    /// `v1 != 0`, `v^2 != -1`.
    Ia,
    /// `v = i`, `|a|^2 - |b|^2 != 1/4` where `w = a + b j`.
    IbNonQuarter,
    /// `v = i`, `|a|^2 - |b|^2 = 1/4`.
    IbQuarter,
    /// `v` real and nonzero.
    Ir,
    /// `x = 0` or `w = 0`.
    II,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::Ia, Case::IbNonQuarter, Case::IbQuarter, Case::Ir, Case::II];

    pub fn name(self) -> &'static str {
        match self {
            Case::Ia => "I-a",
            Case::IbNonQuarter => "I-b(i)",
            Case::IbQuarter => "I-b(ii)",
            Case::Ir => "I-r",
            Case::II => "II",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseTag<S> {
    pub case: Case,
    /// Normalised `v = x w^{-1}`; absent in case II.
    pub v: Option<Quaternion<S>>,
    /// `|a|^2 - |b|^2` for `w = a + b j`; present in case I-b.
    pub ib_split: Option<S>,
}

/// Classifies a fiber-normalised point.
pub fn classify<S: Scalar>(p: &Sp2Point<S>, tol: f64) -> Result<CaseTag<S>> {
    let Some(v) = bundle::fiber_v(p) else {
        return Ok(CaseTag { case: Case::II, v: None, ib_split: None });
    };
    let vt = tol * v.norm_sq().to_f64().sqrt().max(1.0);
    if !v.is_complex(vt) || (v.h1 < S::zero() && !v.h1.is_zero_within(vt)) {
        return Err(Error::NotNormalized(format!("v = {v}")));
    }
    // Float residue off span{1, i} is dropped so that downstream formulas see
    // the case they were chosen for.
    if v.h1.is_zero_within(vt) {
        let v = Quaternion::real(v.h0);
        return Ok(CaseTag { case: Case::Ir, v: Some(v), ib_split: None });
    }
    let v = Quaternion::complex(v.h0, v.h1);
    let v_sq_plus_one = &(&v * &v) + &Quaternion::one();
    if v_sq_plus_one.is_zero(vt) {
        let v = Quaternion::i();
        let w = p.w();
        let split = w.h0.clone() * w.h0.clone() + w.h1.clone() * w.h1.clone()
            - w.h2.clone() * w.h2.clone()
            - w.h3.clone() * w.h3.clone();
        let quarter = (split.clone() - S::from_ratio(1, 4)).is_zero_within(tol);
        let case = if quarter { Case::IbQuarter } else { Case::IbNonQuarter };
        return Ok(CaseTag { case, v: Some(v), ib_split: Some(split) });
    }
    Ok(CaseTag { case: Case::Ia, v: Some(v), ib_split: None })
}

fn qdiv<S: Scalar>(num: &Quaternion<S>, den: &Quaternion<S>, what: &str) -> Result<Quaternion<S>> {
    let inv = den
        .inverse()
        .map_err(|_| Error::DegenerateV(format!("{what} vanishes")))?;
    Ok(num * &inv)
}

fn sp2<S: Scalar>(a: Quaternion<S>, b: Quaternion<S>, c: Quaternion<S>, d: Quaternion<S>) -> Sp2Alg<S> {
    Sp2Alg::new_unchecked(QMat2::new(a, b, c, d))
}

/// The `b` solving the membership equation for a given imaginary `a`:
/// `b_a = (v a - |v|^2 a v) / (2 |v|^2)`.
pub fn b_solution<S: Scalar>(v: &Quaternion<S>, a: &Quaternion<S>) -> Result<Quaternion<S>> {
    let n = v.norm_sq();
    if n.is_zero_within(0.0) {
        return Err(Error::ZeroV);
    }
    let num = &(v * a) - &(a * v).scale(&n);
    Ok(num.scale(&(S::one() / (S::from_i64(2) * n))))
}

/// `theta_a = conj(v) a v - a`.
pub fn theta<S: Scalar>(v: &Quaternion<S>, a: &Quaternion<S>) -> Quaternion<S> {
    &(&(&v.conj() * a) * v) - a
}

/// Basis `(u_0, u_i, u_j, u_k)` of `Ad_p(h_p)` for `v = x w^{-1}`.
pub fn u_basis<S: Scalar>(v: &Quaternion<S>) -> Result<[Sp2Alg<S>; 4]> {
    if v.is_zero(0.0) {
        return Err(Error::ZeroV);
    }
    let u0 = sp2(Quaternion::zero(), v.clone(), -v.conj(), Quaternion::zero());
    let ua = |a: Quaternion<S>| -> Result<Sp2Alg<S>> {
        let b = b_solution(v, &a)?;
        Ok(sp2(a.clone(), b.clone(), -b.conj(), -a))
    };
    Ok([u0, ua(Quaternion::i())?, ua(Quaternion::j())?, ua(Quaternion::k())?])
}

/// The antidiagonal basis of `Ad_p(h_p)` on the case-II locus.
pub fn u_basis_case_ii<S: Scalar>() -> [Sp2Alg<S>; 4] {
    let z = Quaternion::zero;
    [
        sp2(z(), Quaternion::one(), -Quaternion::one(), z()),
        sp2(z(), Quaternion::i(), Quaternion::i(), z()),
        sp2(z(), Quaternion::j(), Quaternion::j(), z()),
        sp2(z(), Quaternion::k(), Quaternion::k(), z()),
    ]
}

/// Closed-form expressions in `v = v0 + v1 i`, evaluated literally.
pub mod closed {
    use super::*;

    fn re<S: Scalar>(s: S) -> Quaternion<S> {
        Quaternion::real(s)
    }

    fn int<S: Scalar>(n: i64) -> Quaternion<S> {
        Quaternion::real(S::from_i64(n))
    }

    fn diag_unit<S: Scalar>(u: Quaternion<S>) -> QMat2<S> {
        QMat2::diag(u.clone(), u)
    }

    fn mat<S: Scalar>(a: Quaternion<S>, b: Quaternion<S>, c: Quaternion<S>, d: Quaternion<S>) -> QMat2<S> {
        QMat2::new(a, b, c, d)
    }

    struct Parts<S> {
        v: Quaternion<S>,
        vb: Quaternion<S>,
        n: Quaternion<S>,
        v2: Quaternion<S>,
        vb2: Quaternion<S>,
        one: Quaternion<S>,
    }

    fn parts<S: Scalar>(v: &Quaternion<S>) -> Result<Parts<S>> {
        if v.is_zero(0.0) {
            return Err(Error::ZeroV);
        }
        Ok(Parts {
            v: v.clone(),
            vb: v.conj(),
            n: re(v.norm_sq()),
            v2: v * v,
            vb2: &v.conj() * &v.conj(),
            one: Quaternion::one(),
        })
    }

    /// `[[1 - |v|^2, -2v], [-2 conj(v), |v|^2 - 1]] diag(i, i)`.
    pub fn bracket_u0_ui<S: Scalar>(v: &Quaternion<S>) -> Result<QMat2<S>> {
        let p = parts(v)?;
        let c = mat(
            &p.one - &p.n,
            (&int(-2) * &p.v).clone(),
            &int(-2) * &p.vb,
            &p.n - &p.one,
        );
        Ok(&c * &diag_unit(Quaternion::i()))
    }

    /// `M(v) = [[v^2 (1 - conj(v)^2) / |v|^2, -2 v0], [-2 v0, conj(v)^2 - 1]]`.
    pub fn m_matrix<S: Scalar>(v: &Quaternion<S>) -> Result<QMat2<S>> {
        let p = parts(v)?;
        let m11 = qdiv(&(&p.v2 * &(&p.one - &p.vb2)), &p.n, "|v|^2")?;
        let off = re(S::from_i64(-2) * v.h0.clone());
        Ok(mat(m11, off.clone(), off, &p.vb2 - &p.one))
    }

    /// `B(v)`, with `[u_i, u_j] = B diag(k, k)` and `[u_i, u_k] = -B diag(j, j)`.
    pub fn b_matrix<S: Scalar>(v: &Quaternion<S>) -> Result<QMat2<S>> {
        let p = parts(v)?;
        let one_m_n = &p.one - &p.n;
        let one_m_vb2 = &p.one - &p.vb2;
        let n2 = &p.n * &p.n;
        let b11 = &int(2) + &qdiv(&(&(&p.v2 * &one_m_n) * &one_m_vb2), &(&int(2) * &n2), "|v|^4")?;
        let b22 = &int(2) + &qdiv(&(&one_m_n * &one_m_vb2), &(&int(2) * &p.n), "|v|^2")?;
        let off = &qdiv(&(&re(v.h1.clone()) * &one_m_n), &p.n, "|v|^2")? * &Quaternion::i();
        Ok(mat(b11, -off.clone(), -off, b22))
    }

    /// `S(v) = [[1, s12], [s12, -1]]`, `s12 = (v - |v|^2 conj(v)) / (2 |v|^2)`.
    pub fn s_matrix<S: Scalar>(v: &Quaternion<S>) -> Result<QMat2<S>> {
        let s = s12(v)?;
        Ok(mat(Quaternion::one(), s.clone(), s, -Quaternion::one()))
    }

    pub fn s12<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        qdiv(&(&p.v - &(&p.n * &p.vb)), &(&int(2) * &p.n), "|v|^2")
    }

    /// Single-fraction form of `alpha(v)`.
    pub fn alpha_single<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let num = &(&int(8) * &(&p.n * &p.n))
            + &(&(&(&p.one - &p.vb2) * &(&p.one - &p.n)) * &(&p.v2 + &p.n));
        let den = &(&(&int(2) * &p.n) * &(&p.one - &p.vb2)) * &(&p.n - &p.v2);
        qdiv(&num, &den, "2|v|^2 (1 - conj(v)^2)(|v|^2 - v^2)")
    }

    /// Two-term form of `alpha(v)`.
    pub fn alpha_two_term<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let vb_m_v = &p.vb - &p.v;
        let first = qdiv(&(&int(4) * &p.vb), &(&(&p.one - &p.vb2) * &vb_m_v), "(1 - conj(v)^2)(conj(v) - v)")?;
        let second = qdiv(
            &(&(&p.one - &p.n) * &(&p.v + &p.vb)),
            &(&(&int(2) * &p.n) * &vb_m_v),
            "2|v|^2 (conj(v) - v)",
        )?;
        Ok(&first + &second)
    }

    /// `t11 = alpha v^2 (1 - conj(v)^2)/|v|^2 + 2 + v^2 (1 - |v|^2)(1 - conj(v)^2)/(2|v|^4)`.
    pub fn t11_expanded<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let alpha = alpha_single(v)?;
        let one_m_vb2 = &p.one - &p.vb2;
        let a = &alpha * &qdiv(&(&p.v2 * &one_m_vb2), &p.n, "|v|^2")?;
        let c = qdiv(
            &(&(&p.v2 * &(&p.one - &p.n)) * &one_m_vb2),
            &(&int(2) * &(&p.n * &p.n)),
            "|v|^4",
        )?;
        Ok(&(&a + &int(2)) + &c)
    }

    /// `t11 = (1 + |v|^2) v (1 + conj(v)^2) / (|v|^2 (conj(v) - v))`.
    pub fn t11_closed<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let num = &(&(&p.one + &p.n) * &p.v) * &(&p.one + &p.vb2);
        qdiv(&num, &(&p.n * &(&p.vb - &p.v)), "|v|^2 (conj(v) - v)")
    }

    /// `t12 = -alpha (v + conj(v)) - (1 - |v|^2)(v - conj(v)) / (2|v|^2)`.
    pub fn t12_expanded<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let alpha = alpha_single(v)?;
        let a = -(&alpha * &(&p.v + &p.vb));
        let b = qdiv(&(&(&p.one - &p.n) * &(&p.v - &p.vb)), &(&int(2) * &p.n), "|v|^2")?;
        Ok(&a - &b)
    }

    /// `t12 = 2 (1 + |v|^2)(1 + conj(v)^2) / ((1 - conj(v)^2)(v - conj(v)))`.
    pub fn t12_closed<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let num = &int(2) * &(&(&p.one + &p.n) * &(&p.one + &p.vb2));
        qdiv(&num, &(&(&p.one - &p.vb2) * &(&p.v - &p.vb)), "(1 - conj(v)^2)(v - conj(v))")
    }

    /// `(1 + |v|^2)(1 + conj(v)^2)^3 / (2 (v - conj(v)) conj(v)^2 (1 - conj(v)^2))`.
    pub fn nondegeneracy<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
        let p = parts(v)?;
        let f = &p.one + &p.vb2;
        let num = &(&p.one + &p.n) * &(&(&f * &f) * &f);
        let den = &(&(&int(2) * &(&p.v - &p.vb)) * &p.vb2) * &(&p.one - &p.vb2);
        qdiv(&num, &den, "2 (v - conj(v)) conj(v)^2 (1 - conj(v)^2)")
    }

    /// `diag(rho, rho)` for a unit `rho`.
    pub fn diag_rho<S: Scalar>(rho: Quaternion<S>) -> QMat2<S> {
        diag_unit(rho)
    }
}

fn check_case_ia_v<S: Scalar>(v: &Quaternion<S>) -> Result<()> {
    if v.is_zero(0.0) {
        return Err(Error::ZeroV);
    }
    if !v.is_complex(0.0) {
        return Err(Error::DegenerateV(format!("{v} is not in span{{1, i}}")));
    }
    if v.h1.is_zero_within(0.0) {
        return Err(Error::DegenerateV("v1 = 0".into()));
    }
    Ok(())
}

/// `alpha(v)`; the coefficient making `alpha [u_0, u_j] - [u_i, u_k]` trace-free.
pub fn alpha<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
    check_case_ia_v(v)?;
    closed::alpha_single(v)
}

/// `U_j = alpha [u_0, u_j] - [u_i, u_k]` and `U_k = alpha [u_0, u_k] + [u_i, u_j]`.
///
/// `alpha` multiplies from the left.
pub fn u_jk<S: Scalar>(v: &Quaternion<S>) -> Result<(Sp2Alg<S>, Sp2Alg<S>)> {
    let a = alpha(v)?;
    let [u0, ui, uj, uk] = u_basis(v)?;
    let uj_m = &u0.bracket(&uj).matrix().left_mul(&a) - ui.bracket(&uk).matrix();
    let uk_m = &u0.bracket(&uk).matrix().left_mul(&a) + ui.bracket(&uj).matrix();
    Ok((Sp2Alg::new_unchecked(uj_m), Sp2Alg::new_unchecked(uk_m)))
}

/// `T(v)` with `U_j = T diag(j, j)`.
pub fn t_matrix<S: Scalar>(v: &Quaternion<S>) -> Result<QMat2<S>> {
    let (uj, _) = u_jk(v)?;
    Ok(uj.matrix() * &closed::diag_rho(-Quaternion::j()))
}

/// `-t11 s12 + t12`, from the directly computed `T(v)`.
pub fn nondegeneracy_direct<S: Scalar>(v: &Quaternion<S>) -> Result<Quaternion<S>> {
    let t = t_matrix(v)?;
    let s12 = closed::s12(v)?;
    Ok(&(-(&t.a * &s12)) + &t.b)
}

#[derive(Clone, Debug)]
pub struct CommutatorCheck<S> {
    pub name: &'static str,
    pub direct: QMat2<S>,
    pub closed: QMat2<S>,
    pub deviation: f64,
    pub matches: bool,
}

/// The five brackets among `u_0, u_i, u_j, u_k`, directly and in closed form.
pub fn commutator_table<S: Scalar>(v: &Quaternion<S>, tol: f64) -> Result<Vec<CommutatorCheck<S>>> {
    let [u0, ui, uj, uk] = u_basis(v)?;
    let m = closed::m_matrix(v)?;
    let b = closed::b_matrix(v)?;
    let dj = closed::diag_rho(Quaternion::j());
    let dk = closed::diag_rho(Quaternion::k());
    let rows = vec![
        ("[u0,ui]", u0.bracket(&ui), closed::bracket_u0_ui(v)?),
        ("[u0,uj]", u0.bracket(&uj), &m * &dj),
        ("[u0,uk]", u0.bracket(&uk), &m * &dk),
        ("[ui,uj]", ui.bracket(&uj), &b * &dk),
        ("[ui,uk]", ui.bracket(&uk), -&(&b * &dj)),
    ];
    Ok(rows
        .into_iter()
        .map(|(name, direct, closed)| {
            let direct = direct.into_matrix();
            let deviation = direct.max_deviation(&closed);
            let matches = direct.approx_eq(&closed, tol * direct.max_abs().max(1.0));
            CommutatorCheck { name, direct, closed, deviation, matches }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryRole {
    /// Element of `Ad_p(h_p)`.
    Horizontal,
    /// Built from one layer of brackets of horizontal elements.
    Bracket,
    /// `ell_rho`, the image of a vertical direction.
    Fundamental,
}

#[derive(Clone, Debug)]
pub struct FrameEntry<S> {
    pub label: &'static str,
    /// The defining relation, e.g. `alpha(v)[u0,uj] - [ui,uk]`.
    pub relation: &'static str,
    pub role: EntryRole,
    /// Whether the construction guarantees a vanishing quaternionic trace.
    pub trace_free: bool,
    pub m: Sp2Alg<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameKind {
    Exotic(Case),
    StandardSphere,
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameKind::Exotic(c) => write!(f, "{c}"),
            FrameKind::StandardSphere => f.write_str("standard"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Frame10<S> {
    pub kind: FrameKind,
    pub entries: Vec<FrameEntry<S>>,
}

impl<S: Scalar> Frame10<S> {
    pub fn matrices(&self) -> Vec<Sp2Alg<S>> {
        self.entries.iter().map(|e| e.m.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Sp2Alg<S>> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.m)
    }

    pub fn rank(&self, tol: f64) -> RankReport {
        real_rank(&self.matrices(), tol)
    }

    pub fn without(&self, label: &str) -> Self {
        Self {
            kind: self.kind,
            entries: self.entries.iter().filter(|e| e.label != label).cloned().collect(),
        }
    }

    /// The frame with every bracket-derived entry removed.
    pub fn without_brackets(&self) -> Vec<Sp2Alg<S>> {
        self.entries
            .iter()
            .filter(|e| e.role != EntryRole::Bracket)
            .map(|e| e.m.clone())
            .collect()
    }

    /// Lists every violated structural claim at `p`: trace-freeness where
    /// guaranteed, membership of the horizontal entries in `Ad_p(h_p)`, and
    /// the vanishing (1,1) entry of `Ad_{p^{-1}}(u_rho)`.
    pub fn check_invariants(&self, p: &Sp2Point<S>, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        if self.entries.len() != 10 {
            out.push(format!("frame has {} entries", self.entries.len()));
        }
        let pinv = p.inverse();
        for e in &self.entries {
            let t = tol * e.m.matrix().max_abs().max(1.0);
            if e.trace_free && !e.m.trace().is_zero(t) {
                out.push(format!("{}: trace {} != 0", e.label, e.m.trace()));
            }
            if e.role == EntryRole::Horizontal {
                match in_ad_h_p(p, &e.m, tol) {
                    Ok(true) => {}
                    Ok(false) => out.push(format!(
                        "{}: membership condition = {}",
                        e.label,
                        basic_condition_value(p, &e.m)
                    )),
                    Err(err) => out.push(format!("{}: {err}", e.label)),
                }
                let corner = ad(&pinv, &e.m).matrix().a.clone();
                if !corner.is_zero(t) {
                    out.push(format!("{}: (1,1) entry of Ad_p^-1(u) = {corner}", e.label));
                }
            }
        }
        out
    }

    pub fn to_json(&self, rank: &RankReport) -> Value {
        json!({
            "case": self.kind.to_string(),
            "matrices": self.entries.iter().map(|e| json!({
                "label": e.label,
                "paper_eq": e.relation,
                "m": e.m.matrix().to_json(),
            })).collect::<Vec<_>>(),
            "rank": rank.rank,
            "pivots": rank.pivot_magnitudes,
        })
    }
}

fn entry<S: Scalar>(
    label: &'static str,
    relation: &'static str,
    role: EntryRole,
    trace_free: bool,
    m: Sp2Alg<S>,
) -> FrameEntry<S> {
    FrameEntry { label, relation, role, trace_free, m }
}

fn ell_entries<S: Scalar>(p: &Sp2Point<S>) -> Result<Vec<FrameEntry<S>>> {
    Ok(vec![
        entry("ell_i", "i Id - p diag(i,0) p*", EntryRole::Fundamental, false, ell(p, &Quaternion::i(), 0.0)?),
        entry("ell_j", "j Id - p diag(j,0) p*", EntryRole::Fundamental, false, ell(p, &Quaternion::j(), 0.0)?),
        entry("ell_k", "k Id - p diag(k,0) p*", EntryRole::Fundamental, false, ell(p, &Quaternion::k(), 0.0)?),
    ])
}

fn u_entries<S: Scalar>(basis: &[Sp2Alg<S>; 4], case_ii: bool) -> Vec<FrameEntry<S>> {
    let rel: [&'static str; 4] = if case_ii {
        ["[[0,1],[-1,0]]", "[[0,i],[i,0]]", "[[0,j],[j,0]]", "[[0,k],[k,0]]"]
    } else {
        ["(a,b) = (0,v)", "(a,b) = (i,b_i)", "(a,b) = (j,b_j)", "(a,b) = (k,b_k)"]
    };
    let labels = ["u0", "ui", "uj", "uk"];
    (0..4)
        .map(|n| entry(labels[n], rel[n], EntryRole::Horizontal, true, basis[n].clone()))
        .collect()
}

/// Classifies `p` and assembles the frame for its case.
pub fn build_frame<S: Scalar>(p: &Sp2Point<S>, tol: f64) -> Result<Frame10<S>> {
    let tag = classify(p, tol)?;
    build_frame_for(p, &tag)
}

/// Assembles the frame prescribed by `tag.case`; `tag.v` must match `p`.
pub fn build_frame_for<S: Scalar>(p: &Sp2Point<S>, tag: &CaseTag<S>) -> Result<Frame10<S>> {
    let half = S::from_ratio(1, 2);
    let mut entries = Vec::with_capacity(10);
    match (tag.case, &tag.v) {
        (Case::II, _) => {
            let basis = u_basis_case_ii();
            entries.extend(u_entries(&basis, true));
            let [u0, ui, uj, uk] = basis;
            entries.push(entry("[u0,ui]", "[u0,ui]", EntryRole::Bracket, true, u0.bracket(&ui)));
            entries.push(entry("[u0,uj]", "[u0,uj]", EntryRole::Bracket, true, u0.bracket(&uj)));
            entries.push(entry("[u0,uk]", "[u0,uk]", EntryRole::Bracket, true, u0.bracket(&uk)));
            entries.extend(ell_entries(p)?);
        }
        (_, None) => return Err(Error::NotNormalized("case I tag without v".into())),
        (case, Some(v)) => {
            let basis = u_basis(v)?;
            entries.extend(u_entries(&basis, false));
            let [u0, ui, uj, uk] = basis;
            match case {
                Case::Ia => {
                    let (cap_uj, cap_uk) = u_jk(v)?;
                    entries.push(entry("[u0,ui]", "[u0,ui]", EntryRole::Bracket, true, u0.bracket(&ui)));
                    entries.push(entry("U_j", "alpha(v)[u0,uj] - [ui,uk]", EntryRole::Bracket, true, cap_uj));
                    entries.push(entry("U_k", "alpha(v)[u0,uk] + [ui,uj]", EntryRole::Bracket, true, cap_uk));
                }
                Case::IbNonQuarter | Case::IbQuarter => {
                    if case == Case::IbNonQuarter {
                        entries.push(entry("F_i", "1/2 [u0,ui]", EntryRole::Bracket, true, u0.bracket(&ui).scale(&half)));
                    } else {
                        let quarter = S::from_ratio(1, 4);
                        entries.push(entry("F'_i", "1/4 [uj,uk]", EntryRole::Bracket, false, uj.bracket(&uk).scale(&quarter)));
                    }
                    let mhalf = -half.clone();
                    entries.push(entry("F_j", "-1/2 [u0,uj]", EntryRole::Bracket, false, u0.bracket(&uj).scale(&mhalf)));
                    entries.push(entry("F_k", "-1/2 [u0,uk]", EntryRole::Bracket, false, u0.bracket(&uk).scale(&mhalf)));
                }
                Case::Ir => {
                    entries.push(entry("[u0,ui]", "[u0,ui]", EntryRole::Bracket, true, u0.bracket(&ui)));
                    entries.push(entry("[u0,uj]", "[u0,uj]", EntryRole::Bracket, true, u0.bracket(&uj)));
                    entries.push(entry("[u0,uk]", "[u0,uk]", EntryRole::Bracket, true, u0.bracket(&uk)));
                }
                Case::II => unreachable!(),
            }
            entries.extend(ell_entries(p)?);
        }
    }
    Ok(Frame10 { kind: FrameKind::Exotic(tag.case), entries })
}

/// The four antidiagonal horizontal directions at the identity and their six brackets.
pub fn standard_sphere_frame<S: Scalar>() -> Frame10<S> {
    let basis = u_basis_case_ii::<S>();
    let labels = ["u0", "u1", "u2", "u3"];
    let rel = ["[[0,1],[-1,0]]", "[[0,i],[i,0]]", "[[0,j],[j,0]]", "[[0,k],[k,0]]"];
    let mut entries: Vec<FrameEntry<S>> = (0..4)
        .map(|n| entry(labels[n], rel[n], EntryRole::Horizontal, true, basis[n].clone()))
        .collect();
    const PAIRS: [(usize, usize, &str); 6] = [
        (0, 1, "[u0,u1]"),
        (0, 2, "[u0,u2]"),
        (0, 3, "[u0,u3]"),
        (1, 2, "[u1,u2]"),
        (1, 3, "[u1,u3]"),
        (2, 3, "[u2,u3]"),
    ];
    for (a, b, name) in PAIRS {
        // brackets of the form diag(q, +-q) are not trace-free when the signs agree
        let m = basis[a].bracket(&basis[b]);
        let tf = m.trace().is_zero(0.0);
        entries.push(entry(name, name, EntryRole::Bracket, tf, m));
    }
    Frame10 { kind: FrameKind::StandardSphere, entries }
}
