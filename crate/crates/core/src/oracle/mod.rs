//! Point counts of explicit curves by enumeration, used as an independent
//! check on the Weil-polynomial pipeline.

mod curve;
mod field;
mod fpoly;
mod map;
mod parse;

pub use curve::{
    count_points, CurveModel, HyperellipticCurve, Monomial, PlaneQuartic, TernaryForm,
};
pub use field::{canonical_modulus, ff_tower, is_irreducible, Budget, Embedding, Fe, FiniteField};
pub use map::{verify_map, CurveMap, DEFAULT_ORDER_CAP};
pub use parse::{parse_curve_file, CurveFile};

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{charpoly_from_power_sums, weil_validate, AlgebraError, WeilPolynomial};
use crate::zeta::point_count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("field of size {size} exceeds the enumeration budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("defining polynomial is reducible")]
    ReducibleModulus,
    #[error("no root of the base modulus in the extension")]
    NoRoot,
    #[error("curve is singular: {0}")]
    Singular(String),
    #[error("over F_(q^{n}) the Weil polynomial predicts {predicted} points, enumeration found {enumerated}")]
    ValidationMismatch {
        n: u32,
        predicted: BigInt,
        enumerated: u64,
    },
    #[error("map does not preserve the curve")]
    MapDoesNotPreserve,
    #[error("map order exceeds the cap {0}")]
    OrderCapExceeded(u64),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Frobenius polynomial from the counts over `F_{q^n}`, `n <= g`, checked
/// against enumerated counts for `g < n <= 2g` as far as `budget` allows.
pub fn charpoly_from_curve(
    curve: &CurveModel,
    budget: Budget,
) -> Result<WeilPolynomial, OracleError> {
    let g = curve.genus();
    let q = curve.q();
    let mut s = Vec::with_capacity(g);
    for n in 1..=g as u32 {
        let count = count_points(curve, n, budget)?;
        s.push(BigInt::from(q).pow(n) + 1 - BigInt::from(count));
    }
    let weil = charpoly_from_power_sums(&s, q, g)?;
    if let Err(v) = weil_validate(&weil, 2 * g) {
        return Err(OracleError::InvalidModel(format!(
            "counts give a non-Weil polynomial: {v}"
        )));
    }
    for n in g as u32 + 1..=2 * g as u32 {
        let enumerated = match count_points(curve, n, budget) {
            Ok(c) => c,
            Err(OracleError::BudgetExceeded { .. }) => {
                log::info!("cross-check stops at n = {}: budget", n - 1);
                break;
            }
            Err(e) => return Err(e),
        };
        let predicted = point_count(&weil, n as usize);
        if predicted != BigInt::from(enumerated) {
            return Err(OracleError::ValidationMismatch {
                n,
                predicted,
                enumerated,
            });
        }
    }
    Ok(weil)
}
