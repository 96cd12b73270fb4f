//! Exact arithmetic: rationals, dense univariate and sparse bivariate
//! polynomials, rational functions, Puiseux series and small matrices.

pub mod bipoly;
pub mod matrix;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use matrix::RatMatrix;
pub use ratfun::RationalFunction;
pub use rational::{format_rational, parse_rational, BigRational};
pub use series::PuiseuxSeries;
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("reciprocal of the zero series")]
    ReciprocalOfZeroSeries,
    #[error("series offsets do not differ by an integer")]
    IncompatibleOffsets,
    #[error("matrix is not square")]
    NotSquare,
}
