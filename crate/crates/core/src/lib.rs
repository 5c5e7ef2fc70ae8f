pub mod bundle;
pub mod error;
pub mod frames;
pub mod identities;
pub mod json;
pub mod qmat;
pub mod qsqrt2;
pub mod quat;
pub mod rank;
pub mod sample;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use qmat::{ad, real_rank, QMat2, Sp2Alg, Sp2Point, Vec10};
pub use quat::Quaternion;
pub use rank::RankReport;
pub use qsqrt2::QSqrt2;
pub use scalar::{Backend, Rational, Scalar, DEFAULT_TOL};
