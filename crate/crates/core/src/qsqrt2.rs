//! Exact arithmetic in the real quadratic field `Q(sqrt 2)`.
//!
//! Some points of the exotic sphere have no representative with rational
//! coordinates (the I-b quarter locus needs `|a|^2 = 3/8`, which is not a sum of
//! two rational squares). Over `Q(sqrt 2)` such points are exact, and real rank
//! equals rank over the field, so certificates stay exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rank::RankReport;
use crate::scalar::{parse_rational, Backend, Rational, Scalar};

/// `a + b sqrt(2)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: <Rational as Zero>::zero() }
    }

    pub fn sqrt2() -> Self {
        Self::new(<Rational as Zero>::zero(), <Rational as Scalar>::one())
    }

    /// `a - b sqrt(2)`, the Galois conjugate.
    pub fn galois(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// `a^2 - 2 b^2`, nonzero unless `self` is zero.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - <Rational as Scalar>::from_i64(2) * &self.b * &self.b
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&<Rational as Zero>::zero());
        let sb = self.b.cmp(&<Rational as Zero>::zero());
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            // opposite signs: the larger of a^2 and 2 b^2 decides
            (s, t) => {
                if self.field_norm().is_positive() {
                    s
                } else {
                    t
                }
            }
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).signum())
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt2", self.b)
        } else {
            write!(f, "{}{:+}*sqrt2", self.a, self.b)
        }
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = <Rational as Scalar>::from_i64(2);
        Self::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div for QSqrt2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.field_norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt 2)");
        let p = self * o.galois();
        Self::new(p.a / &n, p.b / n)
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

fn rat_sqrt(r: &Rational) -> Option<Rational> {
    Scalar::sqrt(r)
}

impl Scalar for QSqrt2 {
    const BACKEND: Backend = Backend::Exact;
    const FIELD: &'static str = "q_sqrt2";

    fn zero() -> Self {
        Self::rational(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        Self::rational(<Rational as Scalar>::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::rational(<Rational as Scalar>::from_i64(n))
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(<Rational as Scalar>::from_ratio(n, d))
    }
    fn is_zero_within(&self, _tol: f64) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * std::f64::consts::SQRT_2
    }

    /// Solves `(c + d sqrt 2)^2 = a + b sqrt 2`, i.e. `c^2 + 2 d^2 = a`, `2 c d = b`.
    fn sqrt(&self) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.is_zero_within(0.0) {
            return Some(self.clone());
        }
        let half = <Rational as Scalar>::from_ratio(1, 2);
        let disc = rat_sqrt(&self.field_norm())?;
        let mut candidates = Vec::new();
        for c_sq in [(&self.a + &disc) * &half, (&self.a - &disc) * &half] {
            if let Some(c) = rat_sqrt(&c_sq) {
                if c.is_zero() {
                    if let Some(d) = rat_sqrt(&(&self.a * &half)) {
                        candidates.push(Self::new(c, d));
                    }
                } else {
                    let d = &self.b / (<Rational as Scalar>::from_i64(2) * &c);
                    candidates.push(Self::new(c, d));
                }
            }
        }
        candidates.into_iter().find_map(|r| {
            let r = if r.signum() == Ordering::Less { -r } else { r };
            (r.clone() * r.clone() == *self).then_some(r)
        })
    }

    fn real_rank(rows: &[Vec<Self>], _tol: f64) -> RankReport {
        field_rank(rows)
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![self.a.to_json(), self.b.to_json()])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [\"num/den\", \"num/den\"] for a + b*sqrt2, got {v}"));
        let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let part = |x: &Value| x.as_str().ok_or_else(bad).and_then(parse_rational);
        Ok(Self::new(part(&arr[0])?, part(&arr[1])?))
    }
}

/// Gaussian elimination over the field. The product of the pivots is, up to
/// sign, the determinant of the selected `rank x rank` minor.
fn field_rank(rows: &[Vec<QSqrt2>]) -> RankReport {
    let mut m = rows.to_vec();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut k = 0;
    let mut pivot_columns = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..n_cols {
        if k == n_rows {
            break;
        }
        let Some(p) = (k..n_rows).find(|&r| !m[r][col].is_zero_within(0.0)) else {
            continue;
        };
        m.swap(k, p);
        let piv = m[k][col].clone();
        for r in k + 1..n_rows {
            if m[r][col].is_zero_within(0.0) {
                continue;
            }
            let f = m[r][col].clone() / piv.clone();
            for c in col..n_cols {
                let d = f.clone() * m[k][c].clone();
                m[r][c] = m[r][c].clone() - d;
            }
        }
        pivots.push(piv);
        pivot_columns.push(col);
        k += 1;
    }
    let det = pivots.iter().cloned().fold(QSqrt2::one(), |a, b| a * b);
    RankReport {
        rank: k,
        rows: n_rows,
        pivot_columns,
        pivot_magnitudes: pivots.iter().map(|p| p.to_f64().abs()).collect(),
        min_relative_pivot: None,
        certificate: (k > 0).then(|| det.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(
            <Rational as Scalar>::from_ratio(a.0, a.1),
            <Rational as Scalar>::from_ratio(b.0, b.1),
        )
    }

    #[test]
    fn field_operations() {
        let s = QSqrt2::sqrt2();
        assert_eq!(s.clone() * s.clone(), QSqrt2::from_i64(2));
        let x = q((3, 1), (-2, 1));
        assert_eq!(x.clone() / x.clone(), QSqrt2::one());
        assert_eq!((x.clone() * q((1, 2), (1, 3)) / q((1, 2), (1, 3))), x);
    }

    #[test]
    fn ordering_agrees_with_floats() {
        let xs = [q((3, 1), (-2, 1)), q((-3, 1), (2, 1)), q((1, 1), (-1, 1)), q((7, 5), (-1, 1)), q((0, 1), (1, 7))];
        for x in &xs {
            for y in &xs {
                assert_eq!(x.partial_cmp(y), x.to_f64().partial_cmp(&y.to_f64()), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn square_roots() {
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        assert_eq!(q((3, 1), (2, 1)).sqrt(), Some(q((1, 1), (1, 1))));
        // (sqrt 2 - 1)^2 = 3 - 2 sqrt 2
        assert_eq!(q((3, 1), (-2, 1)).sqrt(), Some(q((-1, 1), (1, 1))));
        assert_eq!(QSqrt2::from_i64(2).sqrt(), Some(QSqrt2::sqrt2()));
        assert_eq!(q((1, 2), (0, 1)).sqrt(), Some(q((0, 1), (1, 2))));
        assert_eq!(QSqrt2::from_i64(3).sqrt(), None);
        assert_eq!(QSqrt2::from_i64(-1).sqrt(), None);
    }

    #[test]
    fn rank_over_the_field() {
        let s = QSqrt2::sqrt2;
        let one = QSqrt2::one;
        let rows = vec![vec![one(), s()], vec![s(), QSqrt2::from_i64(2)], vec![one(), one()]];
        let r = field_rank(&rows);
        assert_eq!(r.rank, 2);
        // det [[1, sqrt2], [1, 1]] = 1 - sqrt2, up to sign
        let det = r.certificate.unwrap();
        assert!(det == "1-1*sqrt2" || det == "-1+1*sqrt2", "{det}");
    }

    #[test]
    fn json_round_trip() {
        let x = q((1, 2), (-3, 4));
        assert_eq!(QSqrt2::from_json(&x.to_json()).unwrap(), x);
        assert!(QSqrt2::from_json(&Value::from(1.0)).is_err());
    }
}
