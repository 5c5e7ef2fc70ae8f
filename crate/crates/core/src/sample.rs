//! Deterministic point generators.
//!
//! Float samples are Haar-distributed. Exact samples are rational points built
//! from Cayley units; each is twisted along its diagonal-action orbit by a unit
//! chosen so that fiber normalisation stays rational. The case-boundary grid
//! covers every case class, using `Q(sqrt 2)` where rational coordinates
//! cannot reach it.

use rand::Rng;

use crate::bundle::{action_e, cayley_sp1, cayley_sp2, point_from_fiber_data, sample_rng};
use crate::error::Result;
use crate::frames::Case;
use crate::qmat::{QMat2, Sp2Alg, Sp2Point};
use crate::qsqrt2::QSqrt2;
use crate::quat::Quaternion;
use crate::scalar::{Rational, Scalar};

type Q = Quaternion<Rational>;

fn rat(n: i64, d: i64) -> Rational {
    <Rational as Scalar>::from_ratio(n, d)
}

pub(crate) fn small_rat<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.random_range(-5..=5), rng.random_range(1..=4))
}

pub(crate) fn nonzero_rat<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 };
    rat(n, rng.random_range(1..=4))
}

pub(crate) fn imaginary<R: Rng>(rng: &mut R) -> Q {
    Q::new(rat(0, 1), small_rat(rng), small_rat(rng), small_rat(rng))
}

pub(crate) fn unit<R: Rng>(rng: &mut R) -> Q {
    cayley_sp1(&imaginary(rng))
}

/// Unit with vanishing `i` component. Conjugating `v0 + v1 i`, `v1 > 0`, by
/// such a unit gives a `v` whose normalising rotation is rational again. For
/// `v1 < 0` no twist is applied; normalisation then takes the `j` flip.
fn twist_unit<R: Rng>(rng: &mut R, v: &Q) -> Q {
    let t = cayley_sp1(&Q::new(rat(0, 1), rat(0, 1), small_rat(rng), small_rat(rng)));
    if v.h1 > rat(0, 1) {
        t
    } else {
        Q::one()
    }
}

/// `w` with `|w|^2 = 1 / (1 + |v|^2)` for complex `v`.
pub fn fiber_base<S: Scalar>(v: &Quaternion<S>) -> Quaternion<S> {
    let n = S::one() + v.norm_sq();
    Quaternion::new(S::one(), v.h0.clone(), v.h1.clone(), S::zero()).scale(&(S::one() / n))
}

/// Normalised point with fiber coordinate `v` and columns rotated by `mu`, `nu`.
pub fn fiber_point<S: Scalar>(v: &Quaternion<S>, mu: &Quaternion<S>, nu: &Quaternion<S>) -> Result<Sp2Point<S>> {
    let base = fiber_base(v);
    point_from_fiber_data(v, &(&base * mu), &(&base * nu), 0.0)
}

fn twisted(p: Sp2Point<Rational>, lambda: &Q) -> Result<Sp2Point<Rational>> {
    action_e(&p, lambda, lambda, 0.0)
}

/// The family drawn for sample `index` of an exact run; cycles so that every
/// class appears in any ten consecutive samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactFamily {
    /// Complex `v` with generic columns, then an orbit twist.
    Generic,
    /// Cayley transform of a skew-hermitian matrix with entries in `span{1, i}`.
    ComplexCayley,
    RealV,
    VEqualsI,
    /// `x = 0` or `w = 0`.
    Degenerate,
}

impl ExactFamily {
    pub fn for_index(index: u64) -> Self {
        match index % 10 {
            0..=4 => ExactFamily::Generic,
            5 | 6 => ExactFamily::ComplexCayley,
            7 => ExactFamily::RealV,
            8 => ExactFamily::VEqualsI,
            _ => ExactFamily::Degenerate,
        }
    }
}

/// Rational point for sample `index` of an exact run keyed by `seed`.
pub fn exact_sample(seed: u64, index: u64) -> Result<Sp2Point<Rational>> {
    let mut rng = sample_rng(seed, index);
    let rng = &mut rng;
    match ExactFamily::for_index(index) {
        ExactFamily::Generic => {
            let v = Q::complex(small_rat(rng), nonzero_rat(rng));
            twisted(fiber_point(&v, &unit(rng), &unit(rng))?, &twist_unit(rng, &v))
        }
        ExactFamily::ComplexCayley => {
            let b = Q::complex(small_rat(rng), small_rat(rng));
            let s = QMat2::new(
                Q::complex(rat(0, 1), small_rat(rng)),
                b.clone(),
                -b.conj(),
                Q::complex(rat(0, 1), small_rat(rng)),
            );
            cayley_sp2(&Sp2Alg::new(s, 0.0)?, 0.0)
        }
        ExactFamily::RealV => {
            let v = Q::real(nonzero_rat(rng));
            twisted(fiber_point(&v, &unit(rng), &unit(rng))?, &unit(rng))
        }
        ExactFamily::VEqualsI => {
            let sign = if rng.random_bool(0.5) { Q::i() } else { -Q::i() };
            twisted(fiber_point(&sign, &unit(rng), &unit(rng))?, &twist_unit(rng, &sign))
        }
        ExactFamily::Degenerate => {
            let (mu, nu) = (unit(rng), unit(rng));
            let m = if rng.random_bool(0.5) {
                QMat2::diag(mu, nu)
            } else {
                QMat2::new(Q::zero(), mu, nu, Q::zero())
            };
            twisted(Sp2Point::new(m, 0.0)?, &unit(rng))
        }
    }
}

/// A point of the case-boundary grid, over whichever exact field reaches it.
#[derive(Clone, Debug)]
pub enum GridPoint {
    Rational(Sp2Point<Rational>),
    Sqrt2(Sp2Point<QSqrt2>),
}

#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub label: String,
    pub expected: Case,
    pub point: GridPoint,
}

fn units() -> Vec<Q> {
    vec![
        Q::one(),
        Q::i(),
        cayley_sp1(&Q::new(rat(0, 1), rat(1, 2), rat(0, 1), rat(0, 1))),
        cayley_sp1(&Q::new(rat(0, 1), rat(0, 1), rat(1, 3), rat(2, 3))),
        cayley_sp1(&Q::new(rat(0, 1), rat(1, 1), rat(-1, 2), rat(2, 1))),
        Q::new(rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)),
    ]
}

fn complex_units() -> Vec<Q> {
    vec![Q::one(), Q::complex(rat(3, 5), rat(4, 5)), Q::i(), Q::complex(rat(5, 13), rat(-12, 13))]
}

fn lift(q: &Q) -> Quaternion<QSqrt2> {
    Quaternion::from_components(q.components().map(QSqrt2::rational))
}

fn push(out: &mut Vec<SweepPoint>, label: String, expected: Case, p: Result<Sp2Point<Rational>>) -> Result<()> {
    out.push(SweepPoint { label, expected, point: GridPoint::Rational(p?) });
    Ok(())
}

/// Deterministic grid through every case class, including the boundaries
/// between them.
pub fn case_boundary_grid() -> Result<Vec<SweepPoint>> {
    let us = units();
    let mut out = Vec::new();

    let v0s = [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)];
    let v1s = [rat(1, 3), rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)];
    let mut n = 0;
    for v0 in &v0s {
        for v1 in &v1s {
            let v = Q::complex(v0.clone(), v1.clone());
            if v0 == &rat(0, 1) && v1 == &rat(1, 1) {
                continue;
            }
            let (mu, nu) = (&us[n % us.len()], &us[(n + 2) % us.len()]);
            n += 1;
            push(&mut out, format!("I-a v={v0}+{v1}i"), Case::Ia, fiber_point(&v, mu, nu))?;
        }
    }
    // v = i + eps: the I-a frame near its degenerate limit
    for eps in [rat(1, 100), rat(1, 10_000)] {
        let v = Q::complex(eps.clone(), rat(1, 1));
        push(&mut out, format!("I-a v={eps}+i"), Case::Ia, fiber_point(&v, &us[1], &us[3]))?;
    }

    // |w|^2 = 1/2; right and left complex rotations keep |a|^2 - |b|^2 rational
    for (n, mu) in us.iter().enumerate() {
        let nu = &us[(n + 1) % us.len()];
        push(&mut out, format!("I-b(i) mu#{n}"), Case::IbNonQuarter, fiber_point(&Q::i(), mu, nu))?;
    }

    let s4 = QSqrt2::new(rat(0, 1), rat(1, 4));
    let half = QSqrt2::from_ratio(1, 2);
    let quarter = QSqrt2::from_ratio(1, 4);
    let zero = QSqrt2::zero();
    // |a|^2 = 3/8, |b|^2 = 1/8 for w = a + b j
    let quarter_bases = [
        Quaternion::new(half.clone(), s4.clone(), s4.clone(), zero.clone()),
        Quaternion::new(s4.clone(), half.clone(), quarter.clone(), quarter),
    ];
    let y0 = Quaternion::new(half.clone(), zero.clone(), zero.clone(), half);
    for (bi, w0) in quarter_bases.iter().enumerate() {
        for (ci, c) in complex_units().iter().enumerate() {
            let c = lift(c);
            let nu = lift(&us[(bi + ci) % us.len()]);
            let w = &(&c * w0) * &c;
            let y = &y0 * &nu;
            let p = point_from_fiber_data(&Quaternion::i(), &w, &y, 0.0)?;
            out.push(SweepPoint {
                label: format!("I-b(ii) base#{bi} c#{ci}"),
                expected: Case::IbQuarter,
                point: GridPoint::Sqrt2(p),
            });
        }
    }

    for v in [rat(1, 1), rat(2, 1), rat(1, 2), rat(-1, 1), rat(-3, 1), rat(3, 4), rat(-2, 5)] {
        let q = Q::real(v.clone());
        push(&mut out, format!("I-r v={v}"), Case::Ir, fiber_point(&q, &us[2], &us[4]))?;
    }

    for (n, mu) in us.iter().enumerate() {
        let nu = &us[(n + 3) % us.len()];
        let anti = QMat2::new(Q::zero(), mu.clone(), nu.clone(), Q::zero());
        push(&mut out, format!("II x=0 #{n}"), Case::II, Sp2Point::new(anti, 0.0))?;
        let diag = QMat2::diag(mu.clone(), nu.clone());
        push(&mut out, format!("II w=0 #{n}"), Case::II, Sp2Point::new(diag, 0.0))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::normalize_fiber;
    use crate::frames::classify;

    #[test]
    fn fiber_base_has_the_right_norm() {
        let v = Q::complex(rat(2, 3), rat(-5, 7));
        let n = fiber_base(&v).norm_sq();
        assert_eq!(n, <Rational as Scalar>::one() / (<Rational as Scalar>::one() + v.norm_sq()));
    }

    #[test]
    fn exact_samples_normalise_rationally_and_cover_all_families() {
        let mut seen = std::collections::BTreeSet::new();
        for index in 0..60 {
            let p = exact_sample(11, index).unwrap();
            let (pn, _) = normalize_fiber(&p, 0.0).unwrap();
            seen.insert(classify(&pn, 0.0).unwrap().case);
        }
        for c in [Case::Ia, Case::IbNonQuarter, Case::Ir, Case::II] {
            assert!(seen.contains(&c), "{c} missing from {seen:?}");
        }
    }

    #[test]
    fn grid_points_land_in_their_labelled_case() {
        for sp in case_boundary_grid().unwrap() {
            let case = match &sp.point {
                GridPoint::Rational(p) => classify(&normalize_fiber(p, 0.0).unwrap().0, 0.0).unwrap().case,
                GridPoint::Sqrt2(p) => classify(&normalize_fiber(p, 0.0).unwrap().0, 0.0).unwrap().case,
            };
            assert_eq!(case, sp.expected, "{}", sp.label);
        }
    }
}
