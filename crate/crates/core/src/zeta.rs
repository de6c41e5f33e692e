//! Point counts `|X(F_{q^n})|` from a Weil polynomial, the number `R(n)` of
//! points first appearing over `F_{q^n}`, and the criterion sequence
//! `P_{N^m}(n) = R(n) mod N^m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{power_sums_in, PrimePower, WeilPolynomial};
use crate::arith;
use crate::ring::{CoeffRing, Exact, Modular};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("point count for n={n} is missing (series has {available} terms)")]
    MissingCount { n: usize, available: usize },
    #[error("index must be positive")]
    ZeroIndex,
}

/// Which arithmetic the criterion sequence is computed in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Everything in `Z/N^mZ`.
    #[default]
    Modular,
    /// Arbitrary-precision counts, reduced at the end.
    Exact,
}

/// `|X(F_{q^n})|` for `n = 1..=len`, either exact or as residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCountSeries<R: CoeffRing> {
    ring: R,
    q: u64,
    counts: Vec<R::Elem>,
}

impl<R: CoeffRing> PointCountSeries<R> {
    /// `1 + q^n - s_n` for `n = 1..=n_max`, with `s_n` from Newton's identities.
    pub fn from_weil(ring: R, weil: &WeilPolynomial, n_max: usize) -> Self {
        let s = power_sums_in(&ring, &weil.frobenius_coeffs_in(&ring), n_max);
        let q = ring.from_u64(weil.q());
        let one = ring.from_i64(1);
        let mut qn = one.clone();
        let counts = s
            .iter()
            .map(|sn| {
                qn = ring.mul(&qn, &q);
                ring.sub(&ring.add(&one, &qn), sn)
            })
            .collect();
        PointCountSeries {
            ring,
            q: weil.q(),
            counts,
        }
    }

    /// Wraps counts that were obtained some other way, e.g. by enumeration.
    pub fn from_counts(ring: R, q: u64, counts: Vec<R::Elem>) -> Self {
        PointCountSeries { ring, q, counts }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// 1-based.
    pub fn count(&self, n: usize) -> Option<&R::Elem> {
        n.checked_sub(1).and_then(|i| self.counts.get(i))
    }

    pub fn counts(&self) -> &[R::Elem] {
        &self.counts
    }

    fn require(&self, n: usize) -> Result<&R::Elem, ZetaError> {
        self.count(n).ok_or(ZetaError::MissingCount {
            n,
            available: self.counts.len(),
        })
    }
}

/// `|X(F_{q^n})|`, exactly.
pub fn point_count(weil: &WeilPolynomial, n: usize) -> BigInt {
    assert!(n >= 1, "point counts are indexed from 1");
    PointCountSeries::from_weil(Exact, weil, n).counts[n - 1].clone()
}

/// `|X(F_{q^n})| mod modulus`, computed without leaving `Z/MZ`.
pub fn point_count_mod(weil: &WeilPolynomial, n: usize, modulus: u64) -> u64 {
    assert!(n >= 1, "point counts are indexed from 1");
    PointCountSeries::from_weil(Modular::new(modulus), weil, n).counts[n - 1]
}

/// Number of points of `X(F_{q^n})` not defined over any `F_{q^d}`, `d < n`.
///
/// With `d_i = n / p_i` for the distinct primes `p_i | n`, this is
/// `|X(F_{q^n})| - sum_{r>=1} (-1)^{r+1} sum_{i_1<...<i_r} |X(F_{q^{gcd(d_{i_1},...,d_{i_r})}})|`.
/// Only the subsets of the maximal proper divisors are visited.
pub fn new_points<R: CoeffRing>(
    series: &PointCountSeries<R>,
    n: usize,
) -> Result<R::Elem, ZetaError> {
    if n == 0 {
        return Err(ZetaError::ZeroIndex);
    }
    let ring = &series.ring;
    let mut value = series.require(n)?.clone();
    if n == 1 {
        return Ok(value);
    }
    let maximal: Vec<usize> = arith::prime_factors(n as u64)
        .into_iter()
        .map(|p| n / p as usize)
        .collect();
    for mask in 1u32..(1u32 << maximal.len()) {
        let d = maximal
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(0usize, |acc, (_, &d)| acc.gcd(&d));
        let term = series.require(d)?;
        // (-1)^{r+1} inside the subtracted sum
        value = if mask.count_ones() % 2 == 1 {
            ring.sub(&value, term)
        } else {
            ring.add(&value, term)
        };
    }
    Ok(value)
}

/// `R(1..=len)` for a point-count series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewPointSeries<R: CoeffRing> {
    q: u64,
    values: Vec<R::Elem>,
}

impl<R: CoeffRing> NewPointSeries<R> {
    pub fn from_counts(series: &PointCountSeries<R>) -> Self {
        let values = (1..=series.len())
            .map(|n| new_points(series, n).expect("contiguous series covers all divisors"))
            .collect();
        NewPointSeries {
            q: series.q,
            values,
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    /// 1-based.
    pub fn get(&self, n: usize) -> Option<&R::Elem> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

/// An index where exact `R(n)` cannot come from a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAnomaly {
    pub n: usize,
    pub value: BigInt,
}

impl NewPointSeries<Exact> {
    /// Indices with `R(n) < 0` or `n` not dividing `R(n)`. Always empty for
    /// series coming from an actual curve; a Weil polynomial without a curve
    /// behind it may produce entries, which are logged rather than rejected.
    pub fn anomalies(&self) -> Vec<OrbitAnomaly> {
        let out: Vec<OrbitAnomaly> = self
            .values
            .iter()
            .enumerate()
            .filter(|(i, v)| v.is_negative() || !(*v % BigInt::from(i + 1)).is_zero())
            .map(|(i, v)| OrbitAnomaly {
                n: i + 1,
                value: v.clone(),
            })
            .collect();
        for a in &out {
            log::warn!(
                "R({}) = {} is not a nonnegative multiple of {}",
                a.n,
                a.value,
                a.n
            );
        }
        out
    }
}

/// `P_{N^m}(1..=n_max)`, each in `[0, N^m - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence {
    prime_power: PrimePower,
    values: Vec<u64>,
}

impl PSequence {
    pub fn prime_power(&self) -> PrimePower {
        self.prime_power
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `S(n) = P(1) + ... + P(n)`; `S(0) = 0`. Panics past the end.
    pub fn partial_sum(&self, n: usize) -> u64 {
        self.values[..n].iter().sum()
    }

    pub fn partial_sums(&self) -> Vec<u64> {
        self.values
            .iter()
            .scan(0u64, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }
}

/// The criterion sequence, computed entirely mod `N^m`.
pub fn p_sequence(weil: &WeilPolynomial, pp: PrimePower, n_max: usize) -> PSequence {
    let series = PointCountSeries::from_weil(Modular::new(pp.modulus()), weil, n_max);
    PSequence {
        prime_power: pp,
        values: NewPointSeries::from_counts(&series).values,
    }
}

/// The criterion sequence through exact counts, reduced at the end.
pub fn p_sequence_exact(weil: &WeilPolynomial, pp: PrimePower, n_max: usize) -> PSequence {
    let series = PointCountSeries::from_weil(Exact, weil, n_max);
    let ring = Modular::new(pp.modulus());
    let values = NewPointSeries::from_counts(&series)
        .values
        .iter()
        .map(|v| ring.from_bigint(v))
        .collect();
    PSequence {
        prime_power: pp,
        values,
    }
}

pub fn p_sequence_with(
    weil: &WeilPolynomial,
    pp: PrimePower,
    n_max: usize,
    mode: Mode,
) -> PSequence {
    match mode {
        Mode::Modular => p_sequence(weil, pp, n_max),
        Mode::Exact => p_sequence_exact(weil, pp, n_max),
    }
}
