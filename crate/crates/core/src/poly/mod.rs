//! Exact sparse polynomials over ℤ, ℤ/m and ℚ with weighted grading.

mod context;
mod polynomial;
mod ring;
mod text;

pub use context::VariableContext;
pub use polynomial::{Degree, Exponents, Polynomial};
pub use ring::{is_prime, CoefficientRing, Integers, IntegersMod, Rationals, Ring};
pub use text::{parse_polynomial, PolynomialJson, TermJson, VariableJson, POLYNOMIAL_SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable `{0}` has weight 0; weights must be positive")]
    ZeroWeight(String),
    #[error("variable `{0}` appears twice in the context")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has different weights in the two contexts")]
    WeightConflict(String),
    #[error("variable contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("unknown coefficient ring `{0}`")]
    UnknownRing(String),
    #[error("modulus {0} is not allowed (need m >= 2)")]
    InvalidModulus(u64),
    #[error("relation is not monic in `{0}`")]
    NotMonic(String),
    #[error("no value given for variable `{0}`")]
    UnboundVariable(String),
    #[error("exponent vector has {got} entries, context has {expected}")]
    Arity { got: usize, expected: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient `{0}` does not lie in the coefficient ring")]
    CoefficientNotInRing(String),
}
