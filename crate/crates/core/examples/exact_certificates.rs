//! Exact rank certificates: a rational point and a point over Q(sqrt 2) on
//! the quarter threshold, where no rational point exists.

use sp2_brackets::bundle::point_from_fiber_data;
use sp2_brackets::frames::{build_frame, classify};
use sp2_brackets::{QSqrt2, Quaternion, Rational, Scalar};

fn main() -> sp2_brackets::Result<()> {
    let half = QSqrt2::rational(Rational::from_ratio(1, 2));
    let quarter_root2 = QSqrt2::new(Rational::from_ratio(0, 1), Rational::from_ratio(1, 4));
    let zero = QSqrt2::rational(Rational::from_ratio(0, 1));
    let i = Quaternion::<QSqrt2>::i();
    let w = Quaternion::new(half.clone(), quarter_root2.clone(), quarter_root2, zero.clone());
    let y = Quaternion::new(half.clone(), zero.clone(), zero, half);
    let p = point_from_fiber_data(&i, &w, &y, 0.0)?;
    let tag = classify(&p, 0.0)?;
    println!("w = {w}\ncase {}", tag.case);
    let r = build_frame(&p, 0.0)?.rank(0.0);
    println!("rank {} over {}, pivot product {}", r.rank, QSqrt2::FIELD, r.certificate.unwrap_or_default());

    let q = sp2_brackets::sample::exact_sample(5, 1)?;
    let (q, _) = sp2_brackets::bundle::normalize_fiber(&q, 0.0)?;
    let r = build_frame(&q, 0.0)?.rank(0.0);
    println!("case {}, rank {} over {}, leading minor {}", classify(&q, 0.0)?.case, r.rank, Rational::FIELD, r.certificate.unwrap_or_default());
    Ok(())
}
