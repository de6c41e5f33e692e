use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::weil::power_sums_in;
use super::{AlgebraError, IntPolynomial, WeilPolynomial};
use crate::ring::Exact;

/// Frobenius polynomial at `ell` of the abelian variety whose Hecke
/// eigenvalues `a_ell` are the roots of `h`, raised to `mult`:
/// `(x^{deg h} h((x^2 + ell)/x))^mult = prod_i (x^2 - t_i x + ell)^mult`.
pub fn hecke_to_frobenius(
    h: &IntPolynomial,
    ell: u64,
    mult: u32,
) -> Result<WeilPolynomial, AlgebraError> {
    if !h.is_monic() {
        return Err(AlgebraError::NotMonic);
    }
    let d = h.degree().unwrap_or(0);
    if d == 0 || mult == 0 {
        return Err(AlgebraError::ZeroGenus);
    }
    let x2_plus_ell = IntPolynomial::new(vec![BigInt::from(ell), BigInt::from(0), BigInt::one()]);
    let mut acc = IntPolynomial::zero();
    let mut power = IntPolynomial::one();
    for (i, c) in h.coeffs().iter().enumerate() {
        let term = (&power * &IntPolynomial::monomial(BigInt::one(), d - i)).scale(c);
        acc = &acc + &term;
        power = &power * &x2_plus_ell;
    }
    WeilPolynomial::new(ell, d * mult as usize, acc.pow(mult))
}

/// Smallest `n <= depth` at which the power sum of the roots of `h` breaks
/// `|sum t_i^n| <= deg(h) (2 sqrt(ell))^n`, if any.
pub fn hecke_bound_violation(h: &IntPolynomial, ell: u64, depth: usize) -> Option<usize> {
    let d = h.degree()?;
    let c: Vec<BigInt> = (1..=d).map(|i| h.coeff(d - i)).collect();
    let s = power_sums_in(&Exact, &c, depth);
    let d2 = BigInt::from(d * d);
    let four_ell = BigInt::from(4 * ell);
    s.iter().enumerate().find_map(|(idx, v)| {
        let n = idx + 1;
        (v * v > &d2 * Pow::pow(&four_ell, n as u32)).then_some(n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_factor() {
        let h = IntPolynomial::from_i64s(&[-3, 1]);
        let q = hecke_to_frobenius(&h, 7, 1).unwrap();
        assert_eq!(q.poly(), &IntPolynomial::from_i64s(&[7, -3, 1]));
        let q2 = hecke_to_frobenius(&h, 7, 2).unwrap();
        assert_eq!(q2.poly(), &IntPolynomial::from_i64s(&[7, -3, 1]).pow(2));
        assert_eq!(q2.genus(), 2);
    }

    #[test]
    fn quadratic_field_factor() {
        for ell in [2i64, 3, 11] {
            let h = IntPolynomial::from_i64s(&[-5, 0, 1]);
            let q = hecke_to_frobenius(&h, ell as u64, 1).unwrap();
            let expected = IntPolynomial::from_i64s(&[ell * ell, 0, 2 * ell - 5, 0, 1]);
            assert_eq!(q.poly(), &expected);
        }
    }

    #[test]
    fn rejects_non_monic() {
        let h = IntPolynomial::from_i64s(&[1, 2]);
        assert_eq!(hecke_to_frobenius(&h, 2, 1), Err(AlgebraError::NotMonic));
    }

    #[test]
    fn bound_check() {
        // a_2 = 3 > 2 sqrt 2
        assert_eq!(
            hecke_bound_violation(&IntPolynomial::from_i64s(&[-3, 1]), 2, 4),
            Some(1)
        );
        assert_eq!(
            hecke_bound_violation(&IntPolynomial::from_i64s(&[-5, 0, 1]), 2, 8),
            None
        );
    }
}
