//! 2x2 quaternionic matrices, the group Sp(2) and its Lie algebra sp(2).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::rank::RankReport;
use crate::scalar::Scalar;

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat2<S> {
    pub a: Quaternion<S>,
    pub b: Quaternion<S>,
    pub c: Quaternion<S>,
    pub d: Quaternion<S>,
}

impl<S: Scalar> QMat2<S> {
    pub fn new(a: Quaternion<S>, b: Quaternion<S>, c: Quaternion<S>, d: Quaternion<S>) -> Self {
        Self { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::diag(Quaternion::zero(), Quaternion::zero())
    }

    pub fn identity() -> Self {
        Self::diag(Quaternion::one(), Quaternion::one())
    }

    pub fn diag(a: Quaternion<S>, d: Quaternion<S>) -> Self {
        Self::new(a, Quaternion::zero(), Quaternion::zero(), d)
    }

    pub fn entries(&self) -> [&Quaternion<S>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    fn map(&self, f: impl Fn(&Quaternion<S>) -> Quaternion<S>) -> Self {
        Self::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    /// Conjugate transpose.
    pub fn to_float(&self) -> QMat2<f64> {
        QMat2::new(self.a.to_float(), self.b.to_float(), self.c.to_float(), self.d.to_float())
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn trace(&self) -> Quaternion<S> {
        &self.a + &self.d
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|q| q.scale(s))
    }

    /// `q * self`, quaternion scalar acting from the left.
    pub fn left_mul(&self, q: &Quaternion<S>) -> Self {
        self.map(|e| q * e)
    }

    pub fn right_mul(&self, q: &Quaternion<S>) -> Self {
        self.map(|e| e * q)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries().iter().all(|e| e.is_zero(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).is_zero(tol)
    }

    /// Largest absolute component, as f64.
    pub fn max_abs(&self) -> f64 {
        self.entries()
            .iter()
            .flat_map(|e| e.components())
            .fold(0.0_f64, |m, c| m.max(c.to_f64().abs()))
    }

    /// Largest absolute component deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "d": self.d.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let entry = |key: &str| {
            v.get(key)
                .ok_or_else(|| Error::Parse(format!("matrix is missing key `{key}`")))
                .and_then(Quaternion::from_json)
        };
        Ok(Self::new(entry("a")?, entry("b")?, entry("c")?, entry("d")?))
    }
}

impl<S: Scalar> fmt::Display for QMat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl<S: Scalar> Mul<&QMat2<S>> for &QMat2<S> {
    type Output = QMat2<S>;

    fn mul(self, r: &QMat2<S>) -> QMat2<S> {
        QMat2::new(
            &self.a * &r.a + &self.b * &r.c,
            &self.a * &r.b + &self.b * &r.d,
            &self.c * &r.a + &self.d * &r.c,
            &self.c * &r.b + &self.d * &r.d,
        )
    }
}

impl<S: Scalar> Add<&QMat2<S>> for &QMat2<S> {
    type Output = QMat2<S>;
    fn add(self, r: &QMat2<S>) -> QMat2<S> {
        QMat2::new(&self.a + &r.a, &self.b + &r.b, &self.c + &r.c, &self.d + &r.d)
    }
}

impl<S: Scalar> Sub<&QMat2<S>> for &QMat2<S> {
    type Output = QMat2<S>;
    fn sub(self, r: &QMat2<S>) -> QMat2<S> {
        QMat2::new(&self.a - &r.a, &self.b - &r.b, &self.c - &r.c, &self.d - &r.d)
    }
}

impl<S: Scalar> Neg for &QMat2<S> {
    type Output = QMat2<S>;
    fn neg(self) -> QMat2<S> {
        self.map(|e| -e)
    }
}

impl<S: Scalar> Mul for QMat2<S> {
    type Output = QMat2<S>;
    fn mul(self, r: QMat2<S>) -> QMat2<S> {
        &self * &r
    }
}

fn scaled_tol(tol: f64, m: &impl Fn() -> f64) -> f64 {
    tol * m().max(1.0)
}

/// An element of Sp(2): `p p* = p* p = Id`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sp2Point<S>(QMat2<S>);

impl<S: Scalar> Sp2Point<S> {
    pub fn new(m: QMat2<S>, tol: f64) -> Result<Self> {
        let id = QMat2::identity();
        let left = &m * &m.adjoint();
        let right = &m.adjoint() * &m;
        if !left.approx_eq(&id, tol) || !right.approx_eq(&id, tol) {
            let dev = left.max_deviation(&id).max(right.max_deviation(&id));
            return Err(Error::InvariantViolation(format!(
                "p p* != Id (max deviation {dev:e})"
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: QMat2<S>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(QMat2::identity())
    }

    pub fn matrix(&self) -> &QMat2<S> {
        &self.0
    }

    pub fn into_matrix(self) -> QMat2<S> {
        self.0
    }

    pub fn x(&self) -> &Quaternion<S> {
        &self.0.a
    }
    pub fn y(&self) -> &Quaternion<S> {
        &self.0.b
    }
    pub fn w(&self) -> &Quaternion<S> {
        &self.0.c
    }
    pub fn z(&self) -> &Quaternion<S> {
        &self.0.d
    }

    /// Rounds to binary64 and re-validates at `tol`.
    pub fn to_float(&self, tol: f64) -> Result<Sp2Point<f64>> {
        Sp2Point::new(self.0.to_float(), tol)
    }

    /// `p^{-1} = p*`.
    pub fn inverse(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }
}

/// An element of sp(2): `u* = -u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sp2Alg<S>(QMat2<S>);

impl<S: Scalar> Sp2Alg<S> {
    /// Validates skew-hermitian shape; float tolerance scales with the entries.
    pub fn new(m: QMat2<S>, tol: f64) -> Result<Self> {
        let sum = &m + &m.adjoint();
        let t = scaled_tol(tol, &|| m.max_abs());
        if !sum.is_zero(t) {
            return Err(Error::InvariantViolation(format!(
                "u* != -u (max deviation {:e})",
                sum.max_abs()
            )));
        }
        Ok(Self(m))
    }

    pub(crate) fn new_unchecked(m: QMat2<S>) -> Self {
        Self(m)
    }

    /// `[[alpha, beta], [-conj(beta), gamma]]`; imaginary parts of `alpha`, `gamma` are used.
    pub fn from_blocks(alpha: Quaternion<S>, beta: Quaternion<S>, gamma: Quaternion<S>) -> Self {
        let c = -beta.conj();
        Self(QMat2::new(alpha.imaginary_part(), beta, c, gamma.imaginary_part()))
    }

    pub fn zero() -> Self {
        Self(QMat2::zero())
    }

    pub fn matrix(&self) -> &QMat2<S> {
        &self.0
    }

    pub fn into_matrix(self) -> QMat2<S> {
        self.0
    }

    pub fn trace(&self) -> Quaternion<S> {
        self.0.trace()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self(self.0.scale(s))
    }

    pub fn neg(&self) -> Self {
        Self(-&self.0)
    }

    /// `u v - v u`.
    pub fn bracket(&self, other: &Self) -> Self {
        Self(&(&self.0 * &other.0) - &(&other.0 * &self.0))
    }

    /// `Re Tr(u v*)`.
    pub fn inner(&self, other: &Self) -> S {
        (&self.0 * &other.0.adjoint()).trace().real_part()
    }

    pub fn to_vec10(&self) -> Vec10<S> {
        let (a, b, d) = (&self.0.a, &self.0.b, &self.0.d);
        Vec10([
            a.h1.clone(),
            a.h2.clone(),
            a.h3.clone(),
            b.h0.clone(),
            b.h1.clone(),
            b.h2.clone(),
            b.h3.clone(),
            d.h1.clone(),
            d.h2.clone(),
            d.h3.clone(),
        ])
    }

    pub fn from_vec10(x: &Vec10<S>) -> Self {
        let c = &x.0;
        let z = S::zero;
        Self::from_blocks(
            Quaternion::new(z(), c[0].clone(), c[1].clone(), c[2].clone()),
            Quaternion::new(c[3].clone(), c[4].clone(), c[5].clone(), c[6].clone()),
            Quaternion::new(z(), c[7].clone(), c[8].clone(), c[9].clone()),
        )
    }
}

/// `Ad_p(u) = p u p*`.
pub fn ad<S: Scalar>(p: &Sp2Point<S>, u: &Sp2Alg<S>) -> Sp2Alg<S> {
    Sp2Alg(&(&p.0 * &u.0) * &p.0.adjoint())
}

/// Real coordinates `(Im alpha, beta, Im gamma)` of an sp(2) element.
#[derive(Clone, Debug, PartialEq)]
pub struct Vec10<S>(pub [S; 10]);

/// Weight of each coordinate in the invariant inner product; `beta` and
/// `-conj(beta)` both contribute, so those coordinates count twice.
pub const VEC10_INNER_WEIGHTS: [i64; 10] = [1, 1, 1, 2, 2, 2, 2, 1, 1, 1];

impl<S: Scalar> Vec10<S> {
    pub fn weighted_dot(&self, other: &Self) -> S {
        self.0
            .iter()
            .zip(&other.0)
            .zip(VEC10_INNER_WEIGHTS)
            .fold(S::zero(), |acc, ((x, y), w)| acc + S::from_i64(w) * x.clone() * y.clone())
    }
}

/// Rank of the real span of `vectors` inside sp(2) = R^10.
pub fn real_rank<S: Scalar>(vectors: &[Sp2Alg<S>], tol: f64) -> RankReport {
    let rows: Vec<Vec<S>> = vectors.iter().map(|u| u.to_vec10().0.to_vec()).collect();
    S::real_rank(&rows, tol)
}

impl<S: Scalar> Sp2Point<S> {
    pub fn to_json(&self) -> Value {
        let mut v = self.0.to_json();
        v["kind"] = json!("sp2_point");
        v
    }

    pub fn from_json(v: &Value, tol: f64) -> Result<Self> {
        check_kind(v, "sp2_point")?;
        Self::new(QMat2::from_json(v)?, tol)
    }
}

impl<S: Scalar> Sp2Alg<S> {
    pub fn to_json(&self) -> Value {
        let mut v = self.0.to_json();
        v["kind"] = json!("sp2_alg");
        v
    }

    pub fn from_json(v: &Value, tol: f64) -> Result<Self> {
        check_kind(v, "sp2_alg")?;
        Self::new(QMat2::from_json(v)?, tol)
    }
}

fn check_kind(v: &Value, expected: &str) -> Result<()> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == expected => Ok(()),
        Some(k) => Err(Error::Parse(format!("expected kind `{expected}`, got `{k}`"))),
        None => Err(Error::Parse("missing `kind` tag".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Quaternion<Rational>;
    type M = QMat2<Rational>;
    type A = Sp2Alg<Rational>;

    fn alg(m: M) -> A {
        A::new(m, 0.0).unwrap()
    }

    #[test]
    fn matmul_examples() {
        let a = M::new(Q::from_ints(1, 2, 0, 0), Q::j(), Q::k(), Q::from_ints(0, 0, 0, 5));
        assert_eq!(&M::identity() * &a, a);
        let di = M::diag(Q::i(), Q::i());
        let dj = M::diag(Q::j(), Q::j());
        assert_eq!(&di * &dj, M::diag(Q::k(), Q::k()));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(M::identity().adjoint(), M::identity());
        let m = M::new(Q::zero(), Q::i(), Q::i(), Q::zero());
        assert_eq!(m.adjoint(), M::new(Q::zero(), -Q::i(), -Q::i(), Q::zero()));
        let g = M::new(Q::from_ints(1, 2, 3, 4), Q::from_ints(0, 1, 0, 7), Q::j(), Q::from_ints(2, 0, 0, 1));
        assert_eq!(g.adjoint().adjoint(), g);
    }

    #[test]
    fn bracket_examples() {
        let u0 = alg(M::new(Q::zero(), Q::one(), -Q::one(), Q::zero()));
        let u1 = alg(M::new(Q::zero(), Q::i(), Q::i(), Q::zero()));
        let u2 = alg(M::new(Q::zero(), Q::j(), Q::j(), Q::zero()));
        let u3 = alg(M::new(Q::zero(), Q::k(), Q::k(), Q::zero()));
        assert!(u0.bracket(&u0).matrix().is_zero(0.0));
        let two = |q: Q| q.scale(&<Rational as Scalar>::from_i64(2));
        assert_eq!(u0.bracket(&u1).into_matrix(), M::diag(two(Q::i()), two(-Q::i())));
        assert_eq!(u2.bracket(&u3).into_matrix(), M::diag(two(Q::i()), two(Q::i())));
    }

    #[test]
    fn inner_and_trace_examples() {
        let di = alg(M::diag(Q::i(), Q::zero()));
        let dj = alg(M::diag(Q::zero(), Q::j()));
        assert_eq!(di.inner(&dj), <Rational as Scalar>::zero());
        assert_eq!(M::identity().trace(), Q::from_ints(2, 0, 0, 0));
        let u0 = alg(M::new(Q::zero(), Q::one(), -Q::one(), Q::zero()));
        assert!(u0.trace().is_zero(0.0));
    }

    #[test]
    fn vec10_inner_weights_from_basis() {
        // derive the weight of each coordinate from inner on the basis elements
        for idx in 0..10 {
            let mut c: [Rational; 10] = std::array::from_fn(|_| <Rational as Scalar>::zero());
            c[idx] = <Rational as Scalar>::one();
            let e = A::from_vec10(&Vec10(c));
            assert_eq!(e.inner(&e), <Rational as Scalar>::from_i64(VEC10_INNER_WEIGHTS[idx]));
        }
        assert_eq!(A::zero().to_vec10().0.iter().filter(|x| **x != <Rational as Scalar>::zero()).count(), 0);
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        let not_skew = M::diag(Q::one(), Q::zero());
        assert!(matches!(A::new(not_skew, 0.0), Err(Error::InvariantViolation(_))));
        let not_unitary = M::diag(Q::from_ints(2, 0, 0, 0), Q::one());
        assert!(matches!(Sp2Point::new(not_unitary, 0.0), Err(Error::InvariantViolation(_))));
        let off = QMat2::<f64>::diag(Quaternion::real(1.0 + 1e-3), Quaternion::one());
        assert!(Sp2Point::new(off, 1e-9).is_err());
    }

    #[test]
    fn json_kind_tags() {
        let p = Sp2Point::<Rational>::identity();
        let v = p.to_json();
        assert_eq!(v["kind"], "sp2_point");
        assert_eq!(Sp2Point::<Rational>::from_json(&v, 0.0).unwrap(), p);
        assert!(A::from_json(&v, 0.0).is_err());
        let mut bad = v.clone();
        bad["a"] = json!(["2/1", "0/1", "0/1", "0/1"]);
        assert!(matches!(Sp2Point::<Rational>::from_json(&bad, 0.0), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn rank_examples() {
        let u = alg(M::new(Q::i(), Q::from_ints(1, 2, 0, 0), -Q::from_ints(1, -2, 0, 0), Q::k()));
        let two = u.scale(&<Rational as Scalar>::from_i64(2));
        assert_eq!(real_rank(&[u, two], 0.0).rank, 1);
    }
}
