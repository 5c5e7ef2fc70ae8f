//! Bundle-level structure on Sp(2).
//!
//! Projections to S^7 and S^4, the structure-group actions `E` and `R`, the
//! left-trivialised horizontal space `h_p` and its image `Ad_p(h_p)`, the
//! fundamental-field matrices `ell_rho`, and point generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{ad, QMat2, Sp2Alg, Sp2Point};
use crate::quat::Quaternion;
use crate::scalar::Scalar;

/// Float points with `|x|` or `|w|` below this are routed to case II.
pub const CASE_II_THRESHOLD: f64 = 1e-8;

const MAX_DRAW_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct S7Point<S> {
    pub y: Quaternion<S>,
    pub z: Quaternion<S>,
}

impl<S: Scalar> S7Point<S> {
    pub fn new(y: Quaternion<S>, z: Quaternion<S>, tol: f64) -> Result<Self> {
        let n = y.norm_sq() + z.norm_sq() - S::one();
        if !n.is_zero_within(tol) {
            return Err(Error::InvariantViolation(format!("|y|^2 + |z|^2 - 1 = {n}")));
        }
        Ok(Self { y, z })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct S4Point<S> {
    pub h: Quaternion<S>,
    pub t: S,
}

impl<S: Scalar> S4Point<S> {
    pub fn norm_defect(&self) -> S {
        self.h.norm_sq() + self.t.clone() * self.t.clone() - S::one()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.h.approx_eq(&other.h, tol) && (self.t.clone() - other.t.clone()).is_zero_within(tol)
    }
}

/// `pi_K(p) = (y, z)`.
pub fn project_k<S: Scalar>(p: &Sp2Point<S>) -> S7Point<S> {
    S7Point {
        y: p.y().clone(),
        z: p.z().clone(),
    }
}

/// `(2 y conj(z), |y|^2 - |z|^2)`, constant along `R`-orbits.
pub fn project_g_std<S: Scalar>(p: &Sp2Point<S>) -> S4Point<S> {
    S4Point {
        h: (p.y() * &p.z().conj()).scale(&S::from_i64(2)),
        t: p.y().norm_sq() - p.z().norm_sq(),
    }
}

/// `(2 conj(y) z, |y|^2 - |z|^2)`, constant along `E`-orbits.
pub fn project_g_gm<S: Scalar>(p: &Sp2Point<S>) -> S4Point<S> {
    S4Point {
        h: (&p.y().conj() * p.z()).scale(&S::from_i64(2)),
        t: p.y().norm_sq() - p.z().norm_sq(),
    }
}

fn check_unit<S: Scalar>(q: &Quaternion<S>, tol: f64) -> Result<()> {
    let d = q.norm_sq() - S::one();
    if d.is_zero_within(tol) {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!("|{q}|^2 != 1")))
    }
}

/// `E_(lambda, mu)(p) = diag(lambda, lambda) p diag(conj(mu), 1)`.
pub fn action_e<S: Scalar>(
    p: &Sp2Point<S>,
    lambda: &Quaternion<S>,
    mu: &Quaternion<S>,
    tol: f64,
) -> Result<Sp2Point<S>> {
    check_unit(lambda, tol)?;
    check_unit(mu, tol)?;
    let left = QMat2::diag(lambda.clone(), lambda.clone());
    let right = QMat2::diag(mu.conj(), Quaternion::one());
    Ok(Sp2Point::new_unchecked(&(&left * p.matrix()) * &right))
}

/// `R_(lambda, mu)(p) = p diag(conj(lambda), conj(mu))`.
pub fn action_r<S: Scalar>(
    p: &Sp2Point<S>,
    lambda: &Quaternion<S>,
    mu: &Quaternion<S>,
    tol: f64,
) -> Result<Sp2Point<S>> {
    check_unit(lambda, tol)?;
    check_unit(mu, tol)?;
    let right = QMat2::diag(lambda.conj(), mu.conj());
    Ok(Sp2Point::new_unchecked(p.matrix() * &right))
}

fn check_rho<S: Scalar>(rho: &Quaternion<S>, tol: f64) -> Result<()> {
    if !rho.is_imaginary(tol) || rho.is_zero(tol) {
        return Err(Error::NonImaginaryRho);
    }
    Ok(())
}

/// `ell_rho = [[rho - x rho conj(x), -x rho conj(w)], [-w rho conj(x), rho - w rho conj(w)]]`.
pub fn ell<S: Scalar>(p: &Sp2Point<S>, rho: &Quaternion<S>, tol: f64) -> Result<Sp2Alg<S>> {
    check_rho(rho, tol)?;
    let (x, w) = (p.x(), p.w());
    let xr = x * rho;
    let wr = w * rho;
    let m = QMat2::new(
        rho - &(&xr * &x.conj()),
        -(&xr * &w.conj()),
        -(&wr * &x.conj()),
        rho - &(&wr * &w.conj()),
    );
    Ok(Sp2Alg::new_unchecked(m))
}

/// Second construction of `ell_rho`: `rho Id - p rho^+ p*` with `rho^+ = diag(rho, 0)`.
pub fn ell_via_adjoint<S: Scalar>(p: &Sp2Point<S>, rho: &Quaternion<S>, tol: f64) -> Result<Sp2Alg<S>> {
    check_rho(rho, tol)?;
    let rho_id = Sp2Alg::new_unchecked(QMat2::diag(rho.clone(), rho.clone()));
    let rho_plus = Sp2Alg::new_unchecked(QMat2::diag(rho.clone(), Quaternion::zero()));
    Ok(rho_id.sub(&ad(p, &rho_plus)))
}

/// `Tr Ad_p(u)` for `u = [[0, beta], [-conj(beta), gamma]]`, expanded entrywise.
pub fn h_p_condition_value<S: Scalar>(p: &Sp2Point<S>, u: &Sp2Alg<S>) -> Quaternion<S> {
    let (x, y, w, z) = (p.x(), p.y(), p.w(), p.z());
    let beta = &u.matrix().b;
    let gamma = &u.matrix().d;
    let bc = beta.conj();
    &(&(&(&(&(x * beta) * &y.conj()) - &(&(y * &bc) * &x.conj())) + &(&(w * beta) * &z.conj()))
        - &(&(z * &bc) * &w.conj()))
        + &(&(&(y * gamma) * &y.conj()) + &(&(z * gamma) * &z.conj()))
}

/// Membership of `u` in `h_p`. `u` must have a vanishing (1,1) entry.
pub fn in_h_p<S: Scalar>(p: &Sp2Point<S>, u: &Sp2Alg<S>, tol: f64) -> Result<bool> {
    if !u.matrix().a.is_zero(tol) {
        return Err(Error::ShapeMismatch("h_p elements have a zero (1,1) entry".into()));
    }
    Ok(h_p_condition_value(p, u).is_zero(scale_tol(tol, u)))
}

/// `conj(x) a x - conj(w) conj(b) x + conj(x) b w - conj(w) a w` for `u = [[a, b], [-conj(b), -a]]`.
///
/// This is the (1,1) entry of `Ad_{p^{-1}}(u)`; its real part vanishes identically.
pub fn basic_condition_value<S: Scalar>(p: &Sp2Point<S>, u: &Sp2Alg<S>) -> Quaternion<S> {
    let (x, w) = (p.x(), p.w());
    let a = &u.matrix().a;
    let b = &u.matrix().b;
    let xc = x.conj();
    let wc = w.conj();
    &(&(&(&(&xc * a) * x) - &(&(&wc * &b.conj()) * x)) + &(&(&xc * b) * w)) - &(&(&wc * a) * w)
}

/// Membership of a trace-free `u` in `Ad_p(h_p)`.
pub fn in_ad_h_p<S: Scalar>(p: &Sp2Point<S>, u: &Sp2Alg<S>, tol: f64) -> Result<bool> {
    if !u.trace().is_zero(scale_tol(tol, u)) {
        return Err(Error::ShapeMismatch("Ad_p(h_p) elements are trace-free".into()));
    }
    Ok(basic_condition_value(p, u).is_zero(scale_tol(tol, u)))
}

fn scale_tol<S: Scalar>(tol: f64, u: &Sp2Alg<S>) -> f64 {
    tol * u.matrix().max_abs().max(1.0)
}

/// A verified element of `Ad_p(h_p)`, `u = [[a, b], [-conj(b), -a]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalElement<S> {
    u: Sp2Alg<S>,
    a: Quaternion<S>,
    b: Quaternion<S>,
}

impl<S: Scalar> HorizontalElement<S> {
    pub fn new(p: &Sp2Point<S>, u: Sp2Alg<S>, tol: f64) -> Result<Self> {
        if !in_ad_h_p(p, &u, tol)? {
            return Err(Error::InvariantViolation(format!(
                "not in Ad_p(h_p): basic condition = {}",
                basic_condition_value(p, &u)
            )));
        }
        let a = u.matrix().a.clone();
        let b = u.matrix().b.clone();
        Ok(Self { u, a, b })
    }

    pub fn element(&self) -> &Sp2Alg<S> {
        &self.u
    }
    pub fn a(&self) -> &Quaternion<S> {
        &self.a
    }
    pub fn b(&self) -> &Quaternion<S> {
        &self.b
    }
}

/// Whether `p` sits over the case-II locus `x = 0` or `w = 0`.
pub fn is_case_ii<S: Scalar>(p: &Sp2Point<S>) -> bool {
    let t = CASE_II_THRESHOLD * CASE_II_THRESHOLD;
    p.x().norm_sq().is_zero_within(t) || p.w().norm_sq().is_zero_within(t)
}

/// `v = x w^{-1}`, undefined on the case-II locus.
pub fn fiber_v<S: Scalar>(p: &Sp2Point<S>) -> Option<Quaternion<S>> {
    if is_case_ii(p) {
        return None;
    }
    p.w().inverse().ok().map(|wi| p.x() * &wi)
}

/// Basis of `Ad_p(h_p)` for any `p`: the four antidiagonal units on the
/// case-II locus, otherwise the solutions built from `v = x w^{-1}`.
pub fn h_p_basis<S: Scalar>(p: &Sp2Point<S>) -> Result<[Sp2Alg<S>; 4]> {
    match fiber_v(p) {
        None => Ok(crate::frames::u_basis_case_ii()),
        Some(v) => crate::frames::u_basis(&v),
    }
}

/// Left-trivialised vertical directions of the diagonal action:
/// `Ad_{p^{-1}}(lambda Id) - lambda^+` for `lambda` in `{i, j, k}`.
pub fn vertical_delta_basis<S: Scalar>(p: &Sp2Point<S>) -> [Sp2Alg<S>; 3] {
    let pinv = p.inverse();
    [Quaternion::i(), Quaternion::j(), Quaternion::k()].map(|l| {
        let lid = Sp2Alg::new_unchecked(QMat2::diag(l.clone(), l.clone()));
        let lplus = Sp2Alg::new_unchecked(QMat2::diag(l, Quaternion::zero()));
        ad(&pinv, &lid).sub(&lplus)
    })
}

fn normal_quaternion<R: Rng>(rng: &mut R) -> Quaternion<f64> {
    let mut c = || rng.sample::<f64, _>(StandardNormal);
    Quaternion::new(c(), c(), c(), c())
}

/// Haar-distributed point of Sp(2) from a seeded generator.
pub fn random_sp2(seed: u64) -> Result<Sp2Point<f64>> {
    random_sp2_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Generator for sample `index` of a run keyed by `seed`: the seed fixes the
/// ChaCha key and the index selects an independent stream, so samples do not
/// depend on evaluation order and distinct seeds never share streams.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-distributed point for sample `index` of a run keyed by `seed`.
pub fn random_sp2_at(seed: u64, index: u64) -> Result<Sp2Point<f64>> {
    random_sp2_with(&mut sample_rng(seed, index))
}

/// Quaternionic Gram-Schmidt on two Gaussian columns.
pub fn random_sp2_with<R: Rng>(rng: &mut R) -> Result<Sp2Point<f64>> {
    for _ in 0..MAX_DRAW_ATTEMPTS {
        let (x, w) = (normal_quaternion(rng), normal_quaternion(rng));
        let (y, z) = (normal_quaternion(rng), normal_quaternion(rng));
        let n1 = (x.norm_sq() + w.norm_sq()).sqrt();
        if n1 < 1e-6 {
            continue;
        }
        let (x, w) = (x.scale(&(1.0 / n1)), w.scale(&(1.0 / n1)));
        let proj = &(&x.conj() * &y) + &(&w.conj() * &z);
        let y = &y - &(&x * &proj);
        let z = &z - &(&w * &proj);
        let n2 = (y.norm_sq() + z.norm_sq()).sqrt();
        if n2 < 1e-6 {
            continue;
        }
        let (y, z) = (y.scale(&(1.0 / n2)), z.scale(&(1.0 / n2)));
        return Sp2Point::new(QMat2::new(x, y, w, z), crate::scalar::DEFAULT_TOL);
    }
    Err(Error::DegenerateDraw(MAX_DRAW_ATTEMPTS))
}

/// Inverse of a 2x2 quaternionic matrix by block elimination.
pub fn invert<S: Scalar>(m: &QMat2<S>) -> Result<QMat2<S>> {
    if !m.a.is_zero(0.0) {
        let ai = m.a.inverse()?;
        let schur = &m.d - &(&(&m.c * &ai) * &m.b);
        let si = schur.inverse()?;
        let ai_b = &ai * &m.b;
        let c_ai = &m.c * &ai;
        let top_right = -(&ai_b * &si);
        let bottom_left = -(&si * &c_ai);
        let top_left = &ai + &(&(&ai_b * &si) * &c_ai);
        return Ok(QMat2::new(top_left, top_right, bottom_left, si));
    }
    let bi = m.b.inverse()?;
    let ci = m.c.inverse()?;
    Ok(QMat2::new(
        -(&(&ci * &m.d) * &bi),
        ci,
        bi,
        Quaternion::zero(),
    ))
}

/// Cayley transform `(Id - s)(Id + s)^{-1}` of a skew-hermitian `s`.
///
/// Rational input gives an exact rational point of Sp(2).
pub fn cayley_sp2<S: Scalar>(s: &Sp2Alg<S>, tol: f64) -> Result<Sp2Point<S>> {
    let id = QMat2::identity();
    let minus = &id - s.matrix();
    let plus = &id + s.matrix();
    let p = &minus * &invert(&plus)?;
    Sp2Point::new(p, tol)
}

/// Unit quaternion `(1 - s)(1 + s)^{-1}` for imaginary `s`.
pub fn cayley_sp1<S: Scalar>(s: &Quaternion<S>) -> Quaternion<S> {
    let s = s.imaginary_part();
    let one = Quaternion::one();
    let inv = (&one + &s).inverse().expect("1 + s is invertible for imaginary s");
    &(&one - &s) * &inv
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberHint {
    /// `x = 0` or `w = 0`; the point is left unchanged.
    CaseII,
    /// `v = x w^{-1}` now lies in `span{1, i}` with non-negative `i` part.
    CaseI,
}

/// Moves `p` along its diagonal-action orbit so that `v = x w^{-1}` becomes `v0 + v1 i`, `v1 >= 0`.
pub fn normalize_fiber<S: Scalar>(p: &Sp2Point<S>, tol: f64) -> Result<(Sp2Point<S>, FiberHint)> {
    let Some(v) = fiber_v(p) else {
        return Ok((p.clone(), FiberHint::CaseII));
    };
    let (lambda, _) = v.rotate_to_complex(tol)?;
    if lambda == Quaternion::one() {
        return Ok((p.clone(), FiberHint::CaseI));
    }
    Ok((action_e(p, &lambda, &lambda, tol.max(1e-12))?, FiberHint::CaseI))
}

/// `[[v w, y], [w, -conj(v) y]]`, the shape of a fiber-normalised point.
///
/// Requires `|w|^2 = |y|^2 = 1 / (1 + |v|^2)`.
pub fn point_from_fiber_data<S: Scalar>(
    v: &Quaternion<S>,
    w: &Quaternion<S>,
    y: &Quaternion<S>,
    tol: f64,
) -> Result<Sp2Point<S>> {
    let m = QMat2::new(v * w, y.clone(), w.clone(), -(&v.conj() * y));
    Sp2Point::new(m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Quaternion<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        <Rational as Scalar>::from_ratio(n, d)
    }

    /// `w = (1 + j)/2`, `y = (1 + k)/2`, so `|w|^2 = |y|^2 = 1/2`.
    fn ib_point() -> Sp2Point<Rational> {
        let w = Q::new(r(1, 2), r(0, 1), r(1, 2), r(0, 1));
        let y = Q::new(r(1, 2), r(0, 1), r(0, 1), r(1, 2));
        point_from_fiber_data(&Q::i(), &w, &y, 0.0).unwrap()
    }

    #[test]
    fn projections_at_identity() {
        let id = Sp2Point::<Rational>::identity();
        let k = project_k(&id);
        assert_eq!((k.y, k.z), (Q::zero(), Q::one()));
        for s4 in [project_g_std(&id), project_g_gm(&id)] {
            assert_eq!(s4.h, Q::zero());
            assert_eq!(s4.t, r(-1, 1));
        }
    }

    #[test]
    fn ib_point_projects_to_y_iy() {
        let p = ib_point();
        let s7 = project_k(&p);
        assert_eq!(s7.z, Q::i() * s7.y.clone());
        assert_eq!(s7.y.norm_sq(), r(1, 2));
        assert!(S7Point::new(s7.y, s7.z, 0.0).is_ok());
    }

    #[test]
    fn ell_examples() {
        let id = Sp2Point::<Rational>::identity();
        assert_eq!(
            ell(&id, &Q::i(), 0.0).unwrap().into_matrix(),
            QMat2::diag(Q::zero(), Q::i())
        );
        assert_eq!(ell(&id, &Q::one(), 0.0), Err(Error::NonImaginaryRho));
        // displayed form at a v = i point with x = i w
        let p = ib_point();
        let w = p.w().clone();
        let i = Q::i();
        let iwi = &(&(&i * &w) * &i) * &w.conj();
        let wiw = &(&w * &i) * &w.conj();
        let expected = QMat2::new(&i + &(&iwi * &i), -iwi.clone(), &wiw * &i, &i - &wiw);
        assert_eq!(ell(&p, &i, 0.0).unwrap().into_matrix(), expected);
        assert_eq!(ell_via_adjoint(&p, &i, 0.0).unwrap(), ell(&p, &i, 0.0).unwrap());
    }

    #[test]
    fn h_p_at_identity_is_antidiagonal() {
        let id = Sp2Point::<Rational>::identity();
        let anti = Sp2Alg::from_blocks(Q::zero(), Q::from_ints(1, 2, 3, 4), Q::zero());
        assert!(in_h_p(&id, &anti, 0.0).unwrap());
        let with_gamma = Sp2Alg::from_blocks(Q::zero(), Q::one(), Q::k());
        assert!(!in_h_p(&id, &with_gamma, 0.0).unwrap());
        let bad_shape = Sp2Alg::from_blocks(Q::i(), Q::zero(), Q::zero());
        assert!(matches!(in_h_p(&id, &bad_shape, 0.0), Err(Error::ShapeMismatch(_))));
        let basis = h_p_basis(&id).unwrap();
        assert_eq!(basis[0].matrix(), &QMat2::new(Q::zero(), Q::one(), -Q::one(), Q::zero()));
        assert_eq!(basis[1].matrix(), &QMat2::new(Q::zero(), Q::i(), Q::i(), Q::zero()));
    }

    #[test]
    fn basic_condition_rejects_b_zero_with_generic_a() {
        // At the ib point, u = [[a, 0], [0, -a]] is in Ad_p(h_p) iff conj(x) a x = conj(w) a w.
        // With x = i w this reads conj(w) (-i a i - a) w = 0, i.e. i a i = -a, i.e. a in span{i}.
        let p = ib_point();
        let in_span = Sp2Alg::new(QMat2::diag(Q::i(), -Q::i()), 0.0).unwrap();
        assert!(in_ad_h_p(&p, &in_span, 0.0).unwrap());
        let off_span = Sp2Alg::new(QMat2::diag(Q::j(), -Q::j()), 0.0).unwrap();
        assert!(!in_ad_h_p(&p, &off_span, 0.0).unwrap());
        assert!(HorizontalElement::new(&p, off_span, 0.0).is_err());
        let not_trace_free = Sp2Alg::new(QMat2::diag(Q::j(), Q::j()), 0.0).unwrap();
        assert!(matches!(in_ad_h_p(&p, &not_trace_free, 0.0), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn vertical_basis_at_identity() {
        let id = Sp2Point::<Rational>::identity();
        let vb = vertical_delta_basis(&id);
        assert_eq!(vb[0].matrix(), &QMat2::diag(Q::zero(), Q::i()));
        assert_eq!(vb[1].matrix(), &QMat2::diag(Q::zero(), Q::j()));
        assert_eq!(vb[2].matrix(), &QMat2::diag(Q::zero(), Q::k()));
    }

    #[test]
    fn cayley_examples() {
        let zero = Sp2Alg::<Rational>::zero();
        assert_eq!(cayley_sp2(&zero, 0.0).unwrap(), Sp2Point::identity());
        let s = Sp2Alg::from_blocks(Q::i(), Q::zero(), Q::zero());
        let p = cayley_sp2(&s, 0.0).unwrap();
        // (1 - i)(1 + i)^{-1} = (1 - i)^2 / 2 = -i
        assert_eq!(p.matrix(), &QMat2::diag(-Q::i(), Q::one()));
        let u = cayley_sp1(&Q::from_ints(0, 1, 2, 3));
        assert_eq!(u.norm_sq(), r(1, 1));
    }

    #[test]
    fn invert_handles_zero_corner() {
        let m = QMat2::new(Q::zero(), Q::i(), Q::j(), Q::from_ints(1, 1, 0, 0));
        let inv = invert(&m).unwrap();
        assert_eq!(&m * &inv, QMat2::identity());
        assert_eq!(invert(&QMat2::<Rational>::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn normalize_flips_minus_i() {
        // v = -i: use x = -i w
        let w = Q::new(r(1, 2), r(0, 1), r(1, 2), r(0, 1));
        let y = Q::new(r(1, 2), r(0, 1), r(0, 1), r(1, 2));
        let p = point_from_fiber_data(&-Q::i(), &w, &y, 0.0).unwrap();
        let (pn, hint) = normalize_fiber(&p, 0.0).unwrap();
        assert_eq!(hint, FiberHint::CaseI);
        assert_eq!(fiber_v(&pn).unwrap(), Q::i());
        // same as diag(j, j) p diag(-j, 1)
        let expected = &(&QMat2::diag(Q::j(), Q::j()) * p.matrix()) * &QMat2::diag(-Q::j(), Q::one());
        assert_eq!(pn.matrix(), &expected);
        assert_eq!(project_g_gm(&pn), project_g_gm(&p));
    }

    #[test]
    fn normalize_keeps_complex_v_and_case_ii() {
        let v = Q::from_ints(2, 3, 0, 0);
        // |w|^2 = 1 / (1 + |v|^2) = 1/14
        let w = Q::new(r(1, 14), r(2, 14), r(3, 14), r(0, 1));
        let p = point_from_fiber_data(&v, &w, &w, 0.0).unwrap();
        let (pn, _) = normalize_fiber(&p, 0.0).unwrap();
        assert_eq!(pn, p);
        let id = Sp2Point::<Rational>::identity();
        assert_eq!(normalize_fiber(&id, 0.0).unwrap(), (id, FiberHint::CaseII));
    }
}
