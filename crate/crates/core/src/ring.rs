//! Coefficient rings for the power-sum and point-count recurrences.
//!
//! Every recurrence in this crate (Newton's identities, point counts,
//! inclusion–exclusion over maximal divisors) only needs ring operations, so
//! it is written once against [`CoeffRing`] and run either over the integers
//! ([`Exact`]) or over `Z/MZ` ([`Modular`]). The modulus is a runtime value,
//! which is why the ring is an explicit context object rather than a bound on
//! the element type alone.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub trait CoeffRing: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_bigint(&self, value: &BigInt) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn from_u64(&self, value: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(value))
    }

    fn pow(&self, base: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.from_i64(1);
        let mut b = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }
}

/// The integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exact;

impl CoeffRing for Exact {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_bigint(&self, value: &BigInt) -> BigInt {
        value.clone()
    }
    fn from_i64(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn pow(&self, base: &BigInt, exp: u64) -> BigInt {
        num_traits::pow::Pow::pow(base, exp)
    }
}

/// `Z/MZ` with residues kept in `[0, M-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modular {
    modulus: u64,
}

impl Modular {
    /// Panics if `modulus < 2`.
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2, got {modulus}");
        Modular { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn reduce_u128(&self, v: u128) -> u64 {
        (v % self.modulus as u128) as u64
    }
}

impl CoeffRing for Modular {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_bigint(&self, value: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = ((value % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
    fn from_i64(&self, value: i64) -> u64 {
        (value as i128).rem_euclid(self.modulus as i128) as u64
    }
    fn from_u64(&self, value: u64) -> u64 {
        value % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_u128(*a as u128 + *b as u128)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_u128(*a as u128 + (self.modulus - *b) as u128)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce_u128(*a as u128 * *b as u128)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - *a
        }
    }
}
