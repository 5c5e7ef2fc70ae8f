//! Quaternion arithmetic over a pluggable [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `h0 + h1 i + h2 j + h3 k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub h0: S,
    pub h1: S,
    pub h2: S,
    pub h3: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(h0: S, h1: S, h2: S, h3: S) -> Self {
        Self { h0, h1, h2, h3 }
    }

    pub fn from_ints(h0: i64, h1: i64, h2: i64, h3: i64) -> Self {
        Self::new(S::from_i64(h0), S::from_i64(h1), S::from_i64(h2), S::from_i64(h3))
    }

    pub fn real(s: S) -> Self {
        Self::new(s, S::zero(), S::zero(), S::zero())
    }

    /// `re + im i`, the embedding of the complex numbers used throughout.
    pub fn complex(re: S, im: S) -> Self {
        Self::new(re, im, S::zero(), S::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }
    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }
    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }
    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }
    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [S; 4] {
        [self.h0.clone(), self.h1.clone(), self.h2.clone(), self.h3.clone()]
    }

    pub fn to_float(&self) -> Quaternion<f64> {
        Quaternion::new(self.h0.to_f64(), self.h1.to_f64(), self.h2.to_f64(), self.h3.to_f64())
    }

    pub fn from_components(c: [S; 4]) -> Self {
        let [h0, h1, h2, h3] = c;
        Self::new(h0, h1, h2, h3)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.h0.clone(), -self.h1.clone(), -self.h2.clone(), -self.h3.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.h0.clone() * self.h0.clone()
            + self.h1.clone() * self.h1.clone()
            + self.h2.clone() * self.h2.clone()
            + self.h3.clone() * self.h3.clone()
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.h0.clone() * s.clone(),
            self.h1.clone() * s.clone(),
            self.h2.clone() * s.clone(),
            self.h3.clone() * s.clone(),
        )
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.components().iter().all(|c| c.is_zero_within(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).is_zero(tol)
    }

    /// `conj(q) / |q|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero_within(0.0) {
            return Err(Error::ZeroDivisor);
        }
        let inv = S::one() / n;
        Ok(self.conj().scale(&inv))
    }

    pub fn real_part(&self) -> S {
        self.h0.clone()
    }

    pub fn imaginary_part(&self) -> Self {
        Self::new(S::zero(), self.h1.clone(), self.h2.clone(), self.h3.clone())
    }

    pub fn is_imaginary(&self, tol: f64) -> bool {
        self.h0.is_zero_within(tol)
    }

    /// Whether `self` lies in `span{1, i}`.
    pub fn is_complex(&self, tol: f64) -> bool {
        self.h2.is_zero_within(tol) && self.h3.is_zero_within(tol)
    }

    /// Finds a unit `lambda` with `lambda * v * conj(lambda) = v0 + v1 i`, `v1 >= 0`.
    ///
    /// The imaginary direction of `v` is rotated onto `i` by the half-angle
    /// quaternion; the antipodal direction `-i` uses `lambda = j`. In the exact
    /// backend the rotation is only available when the square roots involved
    /// are rational.
    pub fn rotate_to_complex(&self, tol: f64) -> Result<(Self, Self)> {
        if self.is_zero(0.0) {
            return Err(Error::ZeroInput);
        }
        let (m1, m2, m3) = (self.h1.clone(), self.h2.clone(), self.h3.clone());
        if m2.is_zero_within(tol) && m3.is_zero_within(tol) {
            if m1 >= S::zero() || m1.is_zero_within(tol) {
                return Ok((Self::one(), self.clone()));
            }
            let lambda = Self::j();
            let v_norm = &(&lambda * self) * &lambda.conj();
            return Ok((lambda, v_norm));
        }

        let m_sq = self.imaginary_part().norm_sq();
        let m_abs = m_sq
            .sqrt()
            .ok_or_else(|| Error::NotRepresentable(format!("|Im v| = sqrt({m_sq})")))?;
        // |m| + m1, computed without cancellation when m1 < 0.
        let shifted = if m1 >= S::zero() {
            m_abs.clone() + m1.clone()
        } else {
            (m2.clone() * m2.clone() + m3.clone() * m3.clone()) / (m_abs.clone() - m1.clone())
        };
        let q = Self::new(shifted.clone(), S::zero(), m3, -m2);
        let q_norm_sq = S::from_i64(2) * m_abs * shifted;
        let q_norm = q_norm_sq
            .sqrt()
            .ok_or_else(|| Error::NotRepresentable(format!("half-angle norm sqrt({q_norm_sq})")))?;
        let lambda = q.scale(&(S::one() / q_norm));
        let v_norm = &(&lambda * self) * &lambda.conj();
        Ok((lambda, v_norm))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.components().iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse(format!("quaternion must be an array of 4 scalars, got {v}")))?;
        Ok(Self::new(
            S::from_json(&arr[0])?,
            S::from_json(&arr[1])?,
            S::from_json(&arr[2])?,
            S::from_json(&arr[3])?,
        ))
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.h0, self.h1, self.h2, self.h3)
    }
}

impl<S: Scalar> Mul<&Quaternion<S>> for &Quaternion<S> {
    type Output = Quaternion<S>;

    fn mul(self, r: &Quaternion<S>) -> Quaternion<S> {
        let [a0, a1, a2, a3] = self.components();
        let [b0, b1, b2, b3] = r.components();
        Quaternion::new(
            a0.clone() * b0.clone() - a1.clone() * b1.clone() - a2.clone() * b2.clone() - a3.clone() * b3.clone(),
            a0.clone() * b1.clone() + a1.clone() * b0.clone() + a2.clone() * b3.clone() - a3.clone() * b2.clone(),
            a0.clone() * b2.clone() - a1.clone() * b3.clone() + a2.clone() * b0.clone() + a3.clone() * b1.clone(),
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl<S: Scalar> Add<&Quaternion<S>> for &Quaternion<S> {
    type Output = Quaternion<S>;

    fn add(self, r: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.h0.clone() + r.h0.clone(),
            self.h1.clone() + r.h1.clone(),
            self.h2.clone() + r.h2.clone(),
            self.h3.clone() + r.h3.clone(),
        )
    }
}

impl<S: Scalar> Sub<&Quaternion<S>> for &Quaternion<S> {
    type Output = Quaternion<S>;

    fn sub(self, r: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.h0.clone() - r.h0.clone(),
            self.h1.clone() - r.h1.clone(),
            self.h2.clone() - r.h2.clone(),
            self.h3.clone() - r.h3.clone(),
        )
    }
}

impl<S: Scalar> Neg for &Quaternion<S> {
    type Output = Quaternion<S>;

    fn neg(self) -> Quaternion<S> {
        Quaternion::new(-self.h0.clone(), -self.h1.clone(), -self.h2.clone(), -self.h3.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr<Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, r: Quaternion<S>) -> Quaternion<S> {
                (&self).$m(&r)
            }
        }
        impl<S: Scalar> $tr<&Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, r: &Quaternion<S>) -> Quaternion<S> {
                (&self).$m(r)
            }
        }
        impl<S: Scalar> $tr<Quaternion<S>> for &Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, r: Quaternion<S>) -> Quaternion<S> {
                self.$m(&r)
            }
        }
    };
}

forward_owned!(Mul, mul);
forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Quaternion<Rational>;

    fn q(a: i64, b: i64, c: i64, d: i64) -> Q {
        Q::from_ints(a, b, c, d)
    }

    fn r(n: i64, d: i64) -> Rational {
        <Rational as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn unit_products() {
        assert_eq!(Q::i() * Q::j(), Q::k());
        assert_eq!(Q::j() * Q::k(), Q::i());
        assert_eq!(Q::k() * Q::i(), Q::j());
        assert_eq!(Q::j() * Q::i(), -Q::k());
        for u in [Q::i(), Q::j(), Q::k()] {
            assert_eq!(&u * &u, -Q::one());
        }
        let x = q(3, -1, 4, 2);
        assert_eq!(&x * &Q::one(), x);
        assert_eq!(q(1, 1, 0, 0) * q(1, 0, 1, 0), q(1, 1, 1, 1));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Q::i().conj(), -Q::i());
        assert_eq!(q(2, 0, 3, 0).conj(), q(2, 0, -3, 0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Q::i().inverse().unwrap(), -Q::i());
        assert_eq!(q(2, 0, 0, 0).inverse().unwrap(), Q::real(r(1, 2)));
        assert_eq!(
            q(1, 1, 0, 0).inverse().unwrap(),
            Q::new(r(1, 2), r(-1, 2), r(0, 1), r(0, 1))
        );
        assert_eq!(Q::zero().inverse(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn parts() {
        let x = q(3, 0, 0, 4);
        assert_eq!(x.imaginary_part(), q(0, 0, 0, 4));
        assert_eq!(x.real_part(), r(3, 1));
        assert!(q(0, 1, 1, 0).is_imaginary(0.0));
        assert!(!Q::one().is_imaginary(0.0));
        assert_eq!(Q::real(x.real_part()) + x.imaginary_part(), x);
    }

    #[test]
    fn rotate_examples_exact() {
        let (l, v) = q(2, 0, 0, 0).rotate_to_complex(0.0).unwrap();
        assert_eq!((l, v), (Q::one(), q(2, 0, 0, 0)));
        let (l, v) = q(1, 1, 0, 0).rotate_to_complex(0.0).unwrap();
        assert_eq!((l, v), (Q::one(), q(1, 1, 0, 0)));
        // -i goes to i through lambda = j
        let (l, v) = q(5, -3, 0, 0).rotate_to_complex(0.0).unwrap();
        assert_eq!(l, Q::j());
        assert_eq!(v, q(5, 3, 0, 0));
        // 3j needs sqrt(2) in the half-angle construction
        assert!(matches!(
            q(0, 0, 3, 0).rotate_to_complex(0.0),
            Err(Error::NotRepresentable(_))
        ));
        // Im v = 3i + 4j: |Im v| = 5, |q|^2 = 2*5*8 = 80 -> not a square
        assert!(q(1, 3, 4, 0).rotate_to_complex(0.0).is_err());
        // Im v = -7i + 4j + 4k: |Im v| = 9 and |q|^2 = 2*9*2 = 36, both squares.
        let v = q(1, -7, 4, 4);
        let (l, vn) = v.rotate_to_complex(0.0).unwrap();
        assert_eq!(l.norm_sq(), r(1, 1));
        assert_eq!(vn, q(1, 9, 0, 0));
        assert_eq!(Q::zero().rotate_to_complex(0.0), Err(Error::ZeroInput));
    }

    #[test]
    fn rotate_float_3j() {
        let v = Quaternion::<f64>::from_ints(0, 0, 3, 0);
        let (l, vn) = v.rotate_to_complex(1e-9).unwrap();
        // independent check: conjugate by hand
        let back = &(&l * &v) * &l.conj();
        assert!(back.approx_eq(&vn, 1e-12));
        assert!(vn.approx_eq(&Quaternion::from_ints(0, 3, 0, 0), 1e-12));
        assert!((l.norm_sq() - 1.0).abs() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = Quaternion::new(s, 0.0, 0.0, -s);
        assert!(l.approx_eq(&expected, 1e-12) || l.approx_eq(&-&expected, 1e-12));
    }

    #[test]
    fn json_round_trip() {
        let x = Q::new(r(3, 5), r(-1, 2), r(0, 1), r(7, 1));
        let j = x.to_json();
        assert_eq!(j, serde_json::json!(["3/5", "-1/2", "0/1", "7/1"]));
        assert_eq!(Q::from_json(&j).unwrap(), x);
        assert!(Q::from_json(&serde_json::json!([1, 2])).is_err());
    }
}
