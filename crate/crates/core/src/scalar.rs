//! Scalar backends.
//!
//! Every algebraic object in this crate is generic over a [`Scalar`]. Two
//! backends exist: [`Rational`] (arbitrary-precision, exact, decidable
//! equality) and `f64` (IEEE-754 binary64). The backend is chosen once per
//! run and threaded through by monomorphisation, so values from different
//! backends can never be combined.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rank::{self, RankReport};

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Absolute tolerance used for float predicates unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend `{other}`"))),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;
    /// Name of the number field the scalars live in.
    const FIELD: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `n / d`; panics on `d == 0`.
    fn from_ratio(n: i64, d: i64) -> Self;

    /// Exact backends ignore `tol`.
    fn is_zero_within(&self, tol: f64) -> bool;

    fn to_f64(&self) -> f64;

    /// Square root if it is representable in this backend.
    fn sqrt(&self) -> Option<Self>;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn is_exact() -> bool {
        Self::BACKEND == Backend::Exact
    }

    /// Real rank of a list of coordinate rows.
    fn real_rank(rows: &[Vec<Self>], tol: f64) -> RankReport;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;
    const FIELD: &'static str = "binary64";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        n as f64 / d as f64
    }
    fn is_zero_within(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn real_rank(rows: &[Vec<Self>], tol: f64) -> RankReport {
        rank::float_rank(rows, tol)
    }
    fn to_json(&self) -> Value {
        // serde_json writes the shortest decimal that round-trips.
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
    fn from_json(v: &Value) -> Result<Self> {
        v.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a JSON number, got {v}")))
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Exact;
    const FIELD: &'static str = "rational";

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn real_rank(rows: &[Vec<Self>], _tol: f64) -> RankReport {
        rank::exact_rank(rows)
    }
    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
    fn from_json(v: &Value) -> Result<Self> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected a \"num/den\" string, got {v}")))?;
        parse_rational(s)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let r = <Rational as Scalar>::from_ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn rational_sqrt_only_for_squares() {
        let q = <Rational as Scalar>::from_ratio(9, 16);
        assert_eq!(Scalar::sqrt(&q), Some(<Rational as Scalar>::from_ratio(3, 4)));
        assert_eq!(Scalar::sqrt(&<Rational as Scalar>::from_ratio(1, 2)), None);
        assert_eq!(Scalar::sqrt(&<Rational as Scalar>::from_i64(-4)), None);
    }

    #[test]
    fn json_encodings() {
        let r = <Rational as Scalar>::from_ratio(3, 5);
        assert_eq!(r.to_json(), Value::String("3/5".into()));
        assert_eq!(Rational::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), <Rational as Scalar>::from_i64(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());

        let x = 0.1_f64 + 0.2;
        let back = f64::from_json(&x.to_json()).unwrap();
        assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn backend_parses() {
        assert_eq!("EXACT".parse::<Backend>().unwrap(), Backend::Exact);
        assert!("double".parse::<Backend>().is_err());
    }
}
