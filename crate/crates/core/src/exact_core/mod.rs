//! Exact arithmetic substrate: rationals, polynomials, trigonometric sums,
//! truncated series in `s`, and cosine number fields with Galois action.

pub mod arith;
pub mod cosfield;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod ring;
pub mod series;
pub mod tensor;
pub mod trig;

use thiserror::Error;

pub use cosfield::{
    canonical_cos, cos_field_degree, cyclotomic, min_cos_poly, min_cos_poly_conductor,
    multiple_angle, AlgebraicCos, CosField, CosSpec,
};
pub use poly::PolyQ;
pub use quotient::QuotientElem;
pub use rational::{binomial, Rational};
pub use ring::{determinant, RingElem};
pub use series::{series_div, SeriesTrig};
pub use tensor::{is_tensor_conductor, TensorAlgebraic};
pub use trig::TrigPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("conductor {0} has no cosine field of degree at least one")]
    BadConductor(u64),
    #[error("conductor {0} is not supported in the tensor representation")]
    UnsupportedConductor(u64),
    #[error("automorphism index {r} is not coprime to {n}")]
    NotCoprime { r: u64, n: u64 },
    #[error("modulus {0} is not monic of positive degree")]
    NotMonic(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot multiply two slope-bearing trigonometric sums")]
    TwoSlopes,
    #[error("a slope term can only be multiplied by a constant")]
    SlopeTimesTrig,
    #[error("cannot integrate a slope term inside the trigonometric class")]
    IntegrateSlope,
    #[error("denominator series must have angle-free coefficients")]
    NonConstantDenominator,
    #[error("order-0 coefficient must be the bare angle")]
    NotIdentityAngle,
    #[error("composition shift must be free of slope terms")]
    SlopeInShift,
    #[error("cannot parse {0:?}")]
    Parse(String),
}
