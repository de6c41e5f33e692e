//! Exclusion of automorphisms of order `N^m` from the criterion sequence.
//!
//! If `u` has order `N^m`, every point outside the ramification locus of
//! `X -> X/<u>` lies in an orbit of size exactly `N^m`, so the partial sums of
//! `P_{N^m}` never exceed the number of ramified points. Riemann–Hurwitz caps
//! that number by `floor(2g/(N-1)) + 2(N^m-1)/(N-1)`. A partial sum above the
//! cap (or above a sharper cap known for the curve) rules `u` out.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{PrimePower, WeilPolynomial};
use crate::ring::Exact;
use crate::zeta::{p_sequence_with, Mode, NewPointSeries, PointCountSeries};

/// Default scan depth; the longest scan in the modular-curve tables is 291.
pub const DEFAULT_N_MAX: usize = 300;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("criterion needs genus at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("scan depth must be positive")]
    ZeroDepth,
}

/// `floor(2g/(N-1)) + 2(1 + N + ... + N^{m-1})`.
pub fn bound(prime: u64, exponent: u32, genus: usize) -> Result<u64, CriterionError> {
    if genus < 2 {
        return Err(CriterionError::GenusTooSmall(genus));
    }
    let geometric: u64 = (0..exponent).map(|i| prime.pow(i)).sum();
    Ok(2 * genus as u64 / (prime - 1) + 2 * geometric)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `S(crossing_index) > bound`, and `crossing_index` is the first such index.
    Excluded {
        crossing_index: usize,
        sum_at_crossing: u64,
    },
    Inconclusive {
        final_sum: u64,
    },
}

impl Verdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, Verdict::Excluded { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Excluded { .. } => "Excluded",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExclusionReport {
    pub prime_power: PrimePower,
    pub genus: usize,
    pub bound: u64,
    /// `P(1..=n_scanned)`.
    pub p_values: Vec<u64>,
    /// `S(1..=n_scanned)`.
    pub partial_sums: Vec<u64>,
    pub verdict: Verdict,
}

impl ExclusionReport {
    pub fn n_scanned(&self) -> usize {
        self.partial_sums.len()
    }
}

/// Runs the criterion with `N^m`-modular arithmetic.
pub fn exclude(
    weil: &WeilPolynomial,
    pp: PrimePower,
    n_max: usize,
    override_bound: Option<u64>,
) -> Result<ExclusionReport, CriterionError> {
    exclude_with_mode(weil, pp, n_max, override_bound, Mode::Modular)
}

/// Scans `S(n)` for `n <= n_max` and stops at the first `n` with
/// `S(n) > B`, where `B` is `override_bound` or [`bound`].
pub fn exclude_with_mode(
    weil: &WeilPolynomial,
    pp: PrimePower,
    n_max: usize,
    override_bound: Option<u64>,
    mode: Mode,
) -> Result<ExclusionReport, CriterionError> {
    let genus = weil.genus();
    let default_bound = bound(pp.prime(), pp.exponent(), genus)?;
    if n_max == 0 {
        return Err(CriterionError::ZeroDepth);
    }
    let b = override_bound.unwrap_or(default_bound);
    let seq = p_sequence_with(weil, pp, n_max, mode);
    let mut p_values = Vec::new();
    let mut partial_sums = Vec::new();
    let mut sum = 0u64;
    let mut verdict = None;
    for (i, &p) in seq.values().iter().enumerate() {
        sum += p;
        p_values.push(p);
        partial_sums.push(sum);
        if sum > b {
            verdict = Some(Verdict::Excluded {
                crossing_index: i + 1,
                sum_at_crossing: sum,
            });
            break;
        }
    }
    Ok(ExclusionReport {
        prime_power: pp,
        genus,
        bound: b,
        p_values,
        partial_sums,
        verdict: verdict.unwrap_or(Verdict::Inconclusive { final_sum: sum }),
    })
}

/// An index `n0` with `2 < R(n0 + 1) < 2g + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargePrimeWitness {
    pub n0: usize,
    pub new_points: BigInt,
}

/// All `n0 < n_max` with `2 < R(n0+1) < 2g+2`. Any witness rules out
/// automorphisms of every prime order `N > 2g + 1`.
pub fn large_prime_exclusion(
    weil: &WeilPolynomial,
    n_max: usize,
) -> Result<Vec<LargePrimeWitness>, CriterionError> {
    let g = weil.genus();
    if g < 2 {
        return Err(CriterionError::GenusTooSmall(g));
    }
    let series = PointCountSeries::from_weil(Exact, weil, n_max);
    let r = NewPointSeries::from_counts(&series);
    let lo = BigInt::from(2);
    let hi = BigInt::from(2 * g + 2);
    Ok((1..n_max)
        .filter_map(|n0| {
            let v = r.get(n0 + 1)?;
            (*v > lo && *v < hi).then(|| LargePrimeWitness {
                n0,
                new_points: v.clone(),
            })
        })
        .collect())
}

/// `S(n_max)`: if an automorphism of order `N^m` exists, the cyclic group it
/// generates has at least this many ramified points.
pub fn ramification_lower_bound(
    weil: &WeilPolynomial,
    pp: PrimePower,
    n_max: usize,
) -> Result<u64, CriterionError> {
    if weil.genus() < 2 {
        return Err(CriterionError::GenusTooSmall(weil.genus()));
    }
    if n_max == 0 {
        return Err(CriterionError::ZeroDepth);
    }
    Ok(crate::zeta::p_sequence(weil, pp, n_max).partial_sum(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus2() -> WeilPolynomial {
        WeilPolynomial::from_ascending(2, &[4, 0, 3, 0, 1]).unwrap()
    }

    #[test]
    fn bound_spot_values() {
        assert_eq!(bound(2, 1, 6), Ok(14));
        assert_eq!(bound(2, 2, 15), Ok(36));
        assert_eq!(bound(3, 1, 8), Ok(10));
        assert_eq!(bound(2, 3, 8), Ok(30));
        assert_eq!(bound(7, 1, 3), Ok(3));
        assert_eq!(bound(2, 1, 1), Err(CriterionError::GenusTooSmall(1)));
    }

    #[test]
    fn override_equal_to_default_changes_nothing() {
        let pp = PrimePower::new(2, 1).unwrap();
        let a = exclude(&genus2(), pp, 40, None).unwrap();
        let b = exclude(&genus2(), pp, 40, Some(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_override_fires_on_first_nonzero_term() {
        let pp = PrimePower::new(2, 1).unwrap();
        let r = exclude(&genus2(), pp, 40, Some(0)).unwrap();
        assert_eq!(
            r.verdict,
            Verdict::Excluded {
                crossing_index: 1,
                sum_at_crossing: 1
            }
        );
        assert_eq!(r.n_scanned(), 1);
    }

    #[test]
    fn corollary_one_rejects_too_many_new_points() {
        // R(2) = 8 >= 2g + 2 = 6
        let w = large_prime_exclusion(&genus2(), 2).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn ramification_bound_is_monotone() {
        let pp = PrimePower::new(2, 1).unwrap();
        assert_eq!(ramification_lower_bound(&genus2(), pp, 1), Ok(1));
        let sums: Vec<u64> = (1..30)
            .map(|n| ramification_lower_bound(&genus2(), pp, n).unwrap())
            .collect();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn genus_one_rejected() {
        let e = WeilPolynomial::from_ascending(2, &[2, 1, 1]).unwrap();
        let pp = PrimePower::new(2, 1).unwrap();
        assert_eq!(
            exclude(&e, pp, 10, None),
            Err(CriterionError::GenusTooSmall(1))
        );
    }
}
