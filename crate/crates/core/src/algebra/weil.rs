use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::{AlgebraError, IntPolynomial};
use crate::arith;
use crate::ring::{CoeffRing, Exact, Modular};

/// Characteristic polynomial of Frobenius for a genus-`g` curve over `F_q`:
/// `Q(x) = x^{2g} + c_1 x^{2g-1} + ... + c_{2g}`.
///
/// Construction only enforces the shape (monic, degree `2g`); the functional
/// equation and the Weil bound are checked by [`weil_validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilPolynomial {
    q: u64,
    genus: usize,
    poly: IntPolynomial,
}

impl WeilPolynomial {
    pub fn new(q: u64, genus: usize, poly: IntPolynomial) -> Result<Self, AlgebraError> {
        if arith::prime_power_decomposition(q).is_none() {
            return Err(AlgebraError::NotPrimePower(q));
        }
        if genus == 0 {
            return Err(AlgebraError::ZeroGenus);
        }
        if poly.degree() != Some(2 * genus) {
            return Err(AlgebraError::DegreeMismatch {
                expected: 2 * genus,
                found: poly.degree(),
            });
        }
        if !poly.is_monic() {
            return Err(AlgebraError::NotMonic);
        }
        Ok(WeilPolynomial { q, genus, poly })
    }

    /// Builds from ascending coefficients; the genus is half the degree.
    pub fn from_ascending(q: u64, coeffs: &[i64]) -> Result<Self, AlgebraError> {
        let poly = IntPolynomial::from_i64s(coeffs);
        let deg = poly.degree().unwrap_or(0);
        if deg % 2 != 0 {
            return Err(AlgebraError::OddDegree(deg));
        }
        Self::new(q, deg / 2, poly)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    /// `c_i` in the descending convention, `c_0 = 1`.
    pub fn frobenius_coeff(&self, i: usize) -> BigInt {
        self.poly.coeff(2 * self.genus - i)
    }

    /// `c_1, ..., c_{2g}` mapped into `ring`.
    pub fn frobenius_coeffs_in<R: CoeffRing>(&self, ring: &R) -> Vec<R::Elem> {
        (1..=2 * self.genus)
            .map(|i| ring.from_bigint(&self.frobenius_coeff(i)))
            .collect()
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q={}, g={})", self.poly, self.q, self.genus)
    }
}

/// A candidate automorphism order `N^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    prime: u64,
    exponent: u32,
    modulus: u64,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self, AlgebraError> {
        if !arith::is_prime(prime) || exponent == 0 {
            return Err(AlgebraError::InvalidPrimePower(format!(
                "{prime}^{exponent}"
            )));
        }
        let modulus = arith::checked_pow(prime, exponent)
            .ok_or_else(|| AlgebraError::InvalidPrimePower(format!("{prime}^{exponent}")))?;
        Ok(PrimePower {
            prime,
            exponent,
            modulus,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `N^m`
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

/// Accepts `N^m` or a bare prime-power value such as `8`.
impl FromStr for PrimePower {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::InvalidPrimePower(s.to_string());
        let s = s.trim();
        match s.split_once('^') {
            Some((n, m)) => {
                let n = n.trim().parse::<u64>().map_err(|_| bad())?;
                let m = m.trim().parse::<u32>().map_err(|_| bad())?;
                PrimePower::new(n, m)
            }
            None => {
                let v = s.parse::<u64>().map_err(|_| bad())?;
                let (p, e) = arith::prime_power_decomposition(v).ok_or_else(bad)?;
                PrimePower::new(p, e)
            }
        }
    }
}

/// Newton's identities over an arbitrary coefficient ring. `c` holds
/// `c_1..c_D` of a monic polynomial of degree `D`; returns `s_1..s_{n_max}`.
pub fn power_sums_in<R: CoeffRing>(ring: &R, c: &[R::Elem], n_max: usize) -> Vec<R::Elem> {
    let d = c.len();
    let mut s: Vec<R::Elem> = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let mut acc = if k <= d {
            ring.mul(&ring.from_u64(k as u64), &c[k - 1])
        } else {
            ring.zero()
        };
        for i in 1..=d.min(k - 1) {
            acc = ring.add(&acc, &ring.mul(&c[i - 1], &s[k - 1 - i]));
        }
        s.push(ring.neg(&acc));
    }
    s
}

/// Power sums `s_n = sum alpha_i^n` of the Frobenius roots, `n = 1..=n_max`.
/// With a modulus the recurrence runs in `Z/MZ` and values land in `[0, M-1]`.
pub fn newton_power_sums(q: &WeilPolynomial, n_max: usize, modulus: Option<u64>) -> Vec<BigInt> {
    match modulus {
        None => power_sums_in(&Exact, &q.frobenius_coeffs_in(&Exact), n_max),
        Some(m) => {
            let ring = Modular::new(m);
            power_sums_in(&ring, &q.frobenius_coeffs_in(&ring), n_max)
                .into_iter()
                .map(BigInt::from)
                .collect()
        }
    }
}

/// Recovers the Weil polynomial from `s_1..s_g` and the functional equation.
pub fn charpoly_from_power_sums(
    s: &[BigInt],
    q: u64,
    genus: usize,
) -> Result<WeilPolynomial, AlgebraError> {
    if s.len() != genus {
        return Err(AlgebraError::PowerSumCount {
            expected: genus,
            found: s.len(),
        });
    }
    // c[0] = 1, c[k] for k = 1..=g from k c_k = -(s_k + c_1 s_{k-1} + ... + c_{k-1} s_1)
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=genus {
        let mut acc = s[k - 1].clone();
        for i in 1..k {
            acc += &c[i] * &s[k - 1 - i];
        }
        let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(AlgebraError::NonIntegral { index: k });
        }
        c.push(quot);
    }
    let qb = BigInt::from(q);
    let mut desc = c.clone();
    desc.resize(2 * genus + 1, BigInt::zero());
    for i in 0..genus {
        desc[2 * genus - i] = &c[i] * Pow::pow(&qb, (genus - i) as u32);
    }
    desc.reverse();
    WeilPolynomial::new(q, genus, IntPolynomial::new(desc))
}

/// First reason a polynomial fails to be a Weil polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilViolation {
    NotMonic,
    WrongDegree {
        expected: usize,
        found: Option<usize>,
    },
    FunctionalEquation {
        index: usize,
        found: BigInt,
        expected: BigInt,
    },
    WeilBound {
        n: usize,
        power_sum: BigInt,
    },
}

impl fmt::Display for WeilViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeilViolation::NotMonic => write!(f, "not monic"),
            WeilViolation::WrongDegree { expected, found } => {
                write!(f, "degree {found:?}, expected {expected}")
            }
            WeilViolation::FunctionalEquation {
                index,
                found,
                expected,
            } => write!(
                f,
                "functional equation fails at c_{index}: {found} != {expected}"
            ),
            WeilViolation::WeilBound { n, power_sum } => {
                write!(f, "|s_{n}| = {} exceeds 2g*q^(n/2)", power_sum.abs())
            }
        }
    }
}

impl std::error::Error for WeilViolation {}

/// Checks monicity, degree, `c_{2g-i} = q^{g-i} c_i` and
/// `|s_n| <= 2g q^{n/2}` for `n <= depth` (compared as `s_n^2 <= 4g^2 q^n`).
pub fn weil_validate(q: &WeilPolynomial, depth: usize) -> Result<(), WeilViolation> {
    let g = q.genus;
    let poly = &q.poly;
    if poly.degree() != Some(2 * g) {
        return Err(WeilViolation::WrongDegree {
            expected: 2 * g,
            found: poly.degree(),
        });
    }
    if !poly.is_monic() {
        return Err(WeilViolation::NotMonic);
    }
    let qb = BigInt::from(q.q);
    for i in 0..=g {
        let expected = q.frobenius_coeff(i) * Pow::pow(&qb, (g - i) as u32);
        let found = q.frobenius_coeff(2 * g - i);
        if found != expected {
            return Err(WeilViolation::FunctionalEquation {
                index: 2 * g - i,
                found,
                expected,
            });
        }
    }
    let four_g2 = BigInt::from(4 * g * g);
    let mut qn = BigInt::one();
    for (idx, s) in newton_power_sums(q, depth, None).into_iter().enumerate() {
        qn *= &qb;
        if &s * &s > &four_g2 * &qn {
            return Err(WeilViolation::WeilBound {
                n: idx + 1,
                power_sum: s,
            });
        }
    }
    Ok(())
}

/// Frobenius polynomial of the same curve over `F_{q^k}` (roots `alpha_i^k`).
pub fn weil_base_change(q: &WeilPolynomial, k: u32) -> Result<WeilPolynomial, AlgebraError> {
    if k == 0 {
        return Err(AlgebraError::ZeroExtension);
    }
    if k == 1 {
        return Ok(q.clone());
    }
    let g = q.genus;
    let kk = k as usize;
    let s = newton_power_sums(q, 2 * g * kk, None);
    let sk: Vec<BigInt> = (1..=2 * g).map(|j| s[j * kk - 1].clone()).collect();
    let new_q = arith::checked_pow(q.q, k).ok_or(AlgebraError::FieldTooLarge)?;
    let out = charpoly_from_power_sums(&sk[..g], new_q, g)?;
    let check = newton_power_sums(&out, 2 * g, None);
    if let Some(j) = (g..2 * g).find(|&j| check[j] != sk[j]) {
        return Err(AlgebraError::BaseChangeInconsistent { index: j + 1 });
    }
    Ok(out)
}

/// Product of Weil polynomials over a common `q`; genera add.
pub fn poly_product(polys: &[WeilPolynomial]) -> Result<WeilPolynomial, AlgebraError> {
    let first = polys.first().ok_or(AlgebraError::EmptyProduct)?;
    let mut poly = IntPolynomial::one();
    let mut genus = 0;
    for p in polys {
        if p.q != first.q {
            return Err(AlgebraError::MixedBase {
                first: first.q,
                other: p.q,
            });
        }
        poly = &poly * &p.poly;
        genus += p.genus;
    }
    WeilPolynomial::new(first.q, genus, poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn genus2() -> WeilPolynomial {
        WeilPolynomial::from_ascending(2, &[4, 0, 3, 0, 1]).unwrap()
    }

    #[test]
    fn power_sums_of_genus_two_example() {
        assert_eq!(newton_power_sums(&genus2(), 4, None), big(&[0, -6, 0, 2]));
        assert_eq!(newton_power_sums(&genus2(), 4, Some(2)), big(&[0, 0, 0, 0]));
    }

    #[test]
    fn charpoly_inverts_power_sums() {
        let q = charpoly_from_power_sums(&big(&[0, -6]), 2, 2).unwrap();
        assert_eq!(q, genus2());
        let e = charpoly_from_power_sums(&big(&[0]), 2, 1).unwrap();
        assert_eq!(e.poly(), &IntPolynomial::from_i64s(&[2, 0, 1]));
        let a = charpoly_from_power_sums(&big(&[3]), 7, 1).unwrap();
        assert_eq!(a.poly(), &IntPolynomial::from_i64s(&[7, -3, 1]));
    }

    #[test]
    fn charpoly_reports_non_integrality() {
        // c_2 = (s_1^2 - s_2)/2 = (1 - 0)/2
        let err = charpoly_from_power_sums(&big(&[1, 0]), 3, 2).unwrap_err();
        assert_eq!(err, AlgebraError::NonIntegral { index: 2 });
        assert!(matches!(
            charpoly_from_power_sums(&big(&[1]), 3, 2),
            Err(AlgebraError::PowerSumCount { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        assert_eq!(weil_validate(&genus2(), 10), Ok(()));
        let bad_fe = WeilPolynomial::from_ascending(2, &[1, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            weil_validate(&bad_fe, 4),
            Err(WeilViolation::FunctionalEquation { index: 4, .. })
        ));
        let bad_bound = WeilPolynomial::from_ascending(2, &[2, -5, 1]).unwrap();
        assert!(matches!(
            weil_validate(&bad_bound, 2),
            Err(WeilViolation::WeilBound { n: 1, .. })
        ));
    }

    #[test]
    fn base_change_examples() {
        assert_eq!(weil_base_change(&genus2(), 1).unwrap(), genus2());
        let ell = 5;
        let a = 3;
        let e = WeilPolynomial::from_ascending(ell, &[ell as i64, -a, 1]).unwrap();
        let e2 = weil_base_change(&e, 2).unwrap();
        let expected = [ell as i64 * ell as i64, -(a * a - 2 * ell as i64), 1];
        assert_eq!(e2, WeilPolynomial::from_ascending(25, &expected).unwrap());
    }

    #[test]
    fn product_examples() {
        let f1 = WeilPolynomial::from_ascending(2, &[2, -1, 1]).unwrap();
        let f2 = WeilPolynomial::from_ascending(2, &[2, 1, 1]).unwrap();
        assert_eq!(poly_product(&[f1.clone(), f2]).unwrap(), genus2());
        assert_eq!(poly_product(&[f1.clone()]).unwrap(), f1);
        assert_eq!(poly_product(&[]), Err(AlgebraError::EmptyProduct));
        let other = WeilPolynomial::from_ascending(3, &[3, 1, 1]).unwrap();
        assert!(matches!(
            poly_product(&[f1, other]),
            Err(AlgebraError::MixedBase { .. })
        ));
    }

    #[test]
    fn prime_power_parsing() {
        let pp: PrimePower = "2^3".parse().unwrap();
        assert_eq!((pp.prime(), pp.exponent(), pp.modulus()), (2, 3, 8));
        assert_eq!("9".parse::<PrimePower>().unwrap().to_string(), "3^2");
        assert!("6".parse::<PrimePower>().is_err());
        assert!("4^1".parse::<PrimePower>().is_err());
        assert!("2^0".parse::<PrimePower>().is_err());
    }
}
