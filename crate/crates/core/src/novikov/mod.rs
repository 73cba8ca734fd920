//! Arithmetic in the integral Novikov ring with explicit precision tracking.

mod ideal;
mod parse;
mod series;

pub use ideal::{ideal_generator, IdealGenerator};
pub use series::{
    canonical_associate_with_unit, divide, NovikovSeries, Precision, Valuation, ZeroState, DEFAULT_PRECISION,
};

pub(crate) use series::long_division;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("element vanishes to precision {0}; unit status is undecidable")]
    Undecidable(i64),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("not divisible: integer division fails at quotient order {order}")]
    NotDivisible { order: i64 },
    #[error("division by an element that vanishes to its precision")]
    DivisionByZero,
    #[error("element vanishes to its precision")]
    ZeroToPrecision,
    #[error("gcd chain of leading coefficients has not stabilized within precision {0}")]
    PrecisionExhausted(i64),
    #[error("ideal has no nonzero generator")]
    EmptyIdeal,
    #[error("ideal generators must be exact Laurent polynomials")]
    InexactGenerator,
    #[error("cannot parse series literal: {0}")]
    Parse(String),
}
