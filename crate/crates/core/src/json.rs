//! Point files.
//!
//! ```json
//! {"backend": "exact", "p": {"a": ["1/1","0/1","0/1","0/1"], "b": [...], "c": [...], "d": [...]}}
//! ```
//!
//! Exact scalars are `"num/den"` strings and float scalars are JSON numbers.
//! Points over `Q(sqrt 2)` add `"field": "q_sqrt2"` and write each scalar as
//! a pair `[a, b]` meaning `a + b sqrt 2`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qmat::Sp2Point;
use crate::qsqrt2::QSqrt2;
use crate::scalar::{Backend, Rational, Scalar};

/// A validated point of any supported scalar field.
#[derive(Clone, Debug)]
pub enum AnyPoint {
    Rational(Sp2Point<Rational>),
    Sqrt2(Sp2Point<QSqrt2>),
    Float(Sp2Point<f64>),
}

impl AnyPoint {
    pub fn backend(&self) -> Backend {
        match self {
            AnyPoint::Float(_) => Backend::Float,
            _ => Backend::Exact,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyPoint::Rational(p) => point_file(p),
            AnyPoint::Sqrt2(p) => point_file(p),
            AnyPoint::Float(p) => point_file(p),
        }
    }
}

pub fn point_file<S: Scalar>(p: &Sp2Point<S>) -> Value {
    let mut v = json!({ "backend": S::BACKEND, "p": p.to_json() });
    if S::FIELD == QSqrt2::FIELD {
        v["field"] = json!(S::FIELD);
    }
    v
}

/// Parses and validates a point file; `tol` applies to float points.
pub fn parse_point_file(text: &str, tol: f64) -> Result<AnyPoint> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    parse_point_value(&v, tol)
}

pub fn parse_point_value(v: &Value, tol: f64) -> Result<AnyPoint> {
    let backend: Backend = v
        .get("backend")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing string field `backend`".into()))?
        .parse()?;
    let mut p = v
        .get("p")
        .filter(|p| p.is_object())
        .cloned()
        .ok_or_else(|| Error::Parse("missing object field `p`".into()))?;
    if p.get("kind").is_none() {
        p["kind"] = json!("sp2_point");
    }
    let field = v.get("field").and_then(Value::as_str);
    match (backend, field) {
        (Backend::Float, None | Some("binary64")) => Ok(AnyPoint::Float(Sp2Point::from_json(&p, tol)?)),
        (Backend::Exact, None | Some("rational")) => Ok(AnyPoint::Rational(Sp2Point::from_json(&p, 0.0)?)),
        (Backend::Exact, Some("q_sqrt2")) => Ok(AnyPoint::Sqrt2(Sp2Point::from_json(&p, 0.0)?)),
        (b, Some(f)) => Err(Error::Parse(format!("field `{f}` is not available on the {b} backend"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::QMat2;
    use crate::quat::Quaternion;

    #[test]
    fn round_trips() {
        let p = Sp2Point::<Rational>::identity();
        let back = parse_point_file(&point_file(&p).to_string(), 0.0).unwrap();
        assert!(matches!(back, AnyPoint::Rational(q) if q == p));

        let s = QSqrt2::new(<Rational as Scalar>::zero(), <Rational as Scalar>::from_ratio(1, 2));
        let z = Quaternion::<QSqrt2>::zero();
        let m = QMat2::new(
            Quaternion::new(s.clone(), s.clone(), QSqrt2::zero(), QSqrt2::zero()),
            z.clone(),
            z,
            Quaternion::one(),
        );
        let p = Sp2Point::new(m, 0.0).unwrap();
        let text = point_file(&p).to_string();
        assert!(text.contains("q_sqrt2"));
        assert!(matches!(parse_point_file(&text, 0.0).unwrap(), AnyPoint::Sqrt2(q) if q == p));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_point_file("{", 1e-9), Err(Error::Parse(_))));
        assert!(matches!(parse_point_file(r#"{"backend":"exact"}"#, 1e-9), Err(Error::Parse(_))));
        let off = r#"{"backend":"float","p":{"a":[1.001,0,0,0],"b":[0,0,0,0],"c":[0,0,0,0],"d":[1,0,0,0]}}"#;
        assert!(matches!(parse_point_file(off, 1e-9), Err(Error::InvariantViolation(_))));
        let ok = r#"{"backend":"float","p":{"a":[1,0,0,0],"b":[0,0,0,0],"c":[0,0,0,0],"d":[1,0,0,0]}}"#;
        assert!(matches!(parse_point_file(ok, 1e-9).unwrap(), AnyPoint::Float(_)));
    }
}
