//! Exact and modular polynomial arithmetic for Frobenius characteristic
//! polynomials.
//!
//! Coefficients are stored in ascending degree everywhere (`coeffs[i]` is the
//! coefficient of `x^i`); the descending `c_i` of `x^{2g} + c_1 x^{2g-1} + ...`
//! is available through [`WeilPolynomial::frobenius_coeff`].

mod hecke;
mod poly;
mod weil;

pub use hecke::{hecke_bound_violation, hecke_to_frobenius};
pub use poly::IntPolynomial;
pub use weil::{
    charpoly_from_power_sums, newton_power_sums, poly_product, power_sums_in, weil_base_change,
    weil_validate, PrimePower, WeilPolynomial, WeilViolation,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("expected degree {expected}, found {found:?}")]
    DegreeMismatch {
        expected: usize,
        found: Option<usize>,
    },
    #[error("odd degree {0} cannot be a Weil polynomial")]
    OddDegree(usize),
    #[error("genus must be positive")]
    ZeroGenus,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid prime power {0}")]
    InvalidPrimePower(String),
    #[error("expected {expected} power sums, found {found}")]
    PowerSumCount { expected: usize, found: usize },
    #[error("Newton's identities give a non-integral coefficient c_{index}")]
    NonIntegral { index: usize },
    #[error("base change is inconsistent at power sum {index}")]
    BaseChangeInconsistent { index: usize },
    #[error("extension degree must be positive")]
    ZeroExtension,
    #[error("field size does not fit in 64 bits")]
    FieldTooLarge,
    #[error("product of an empty list of polynomials")]
    EmptyProduct,
    #[error("factors over different fields: q={first} and q={other}")]
    MixedBase { first: u64, other: u64 },
}
