//! Finite fields `F_{p^k}` in a polynomial basis.
//!
//! An element is stored as the integer `sum a_i p^i`, where `a_i` is the
//! coefficient of `t^i` modulo the defining polynomial. The defining
//! polynomial is the lexicographically smallest monic irreducible of degree
//! `k`, comparing `(c_0, c_1, ..., c_{k-1})` with `c_0` most significant.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::OracleError;
use crate::arith;

/// Element of a [`FiniteField`], in the integer encoding.
pub type Fe = u32;

/// Fields with at most this many elements get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 22;

/// Upper bound on field sizes the oracle will construct or enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1 << 26)
    }
}

struct Tables {
    exp: Vec<Fe>,
    log: Vec<u32>,
}

pub struct FiniteField {
    p: u32,
    degree: u32,
    size: u64,
    /// Monic, ascending, length `degree + 1`.
    modulus: Vec<u32>,
    digit_weights: Vec<u32>,
    tables: Option<Tables>,
    /// Characteristic 2 only: bit `i` is `Tr(t^i)`.
    trace_mask: u32,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

// --- polynomials over F_p as digit vectors (ascending) ---

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (factor as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Irreducibility over `F_p` by trial division with every monic polynomial
/// of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let d = poly.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for dd in 1..=d / 2 {
        let count = (p as u64).pow(dd as u32);
        let mut divisor = vec![0u32; dd + 1];
        divisor[dd] = 1;
        for idx in 0..count {
            let mut v = idx;
            for c in divisor.iter_mut().take(dd) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            if fp_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `degree` over
/// `F_p`, with `c_0` the most significant coordinate.
pub fn canonical_modulus(p: u32, degree: u32) -> Vec<u32> {
    let d = degree as usize;
    let total = (p as u64).pow(degree);
    for idx in 0..total {
        let mut poly = vec![0u32; d + 1];
        poly[d] = 1;
        let mut v = idx;
        for i in (0..d).rev() {
            poly[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FiniteField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FiniteField {
    /// `F_{p^degree}` with the canonical modulus, shared across callers.
    pub fn canonical(p: u64, degree: u32, budget: Budget) -> Result<Arc<FiniteField>, OracleError> {
        if !arith::is_prime(p) || p > u32::MAX as u64 {
            return Err(OracleError::NotPrime(p));
        }
        if degree == 0 {
            return Err(OracleError::InvalidModel(
                "extension degree must be positive".into(),
            ));
        }
        let size = (p as u128).pow(degree);
        if size > budget.0 as u128 || size > u32::MAX as u128 {
            return Err(OracleError::BudgetExceeded {
                size,
                budget: budget.0,
            });
        }
        let key = (p as u32, degree);
        if let Some(f) = cache().lock().expect("field cache poisoned").get(&key) {
            return Ok(f.clone());
        }
        let field = Arc::new(Self::build(p as u32, canonical_modulus(p as u32, degree)));
        cache()
            .lock()
            .expect("field cache poisoned")
            .entry(key)
            .or_insert_with(|| field.clone());
        Ok(field)
    }

    /// A field with an explicit modulus; checked for irreducibility.
    pub fn with_modulus(
        p: u64,
        modulus: &[u32],
        budget: Budget,
    ) -> Result<FiniteField, OracleError> {
        if !arith::is_prime(p) || p > u32::MAX as u64 {
            return Err(OracleError::NotPrime(p));
        }
        let p = p as u32;
        let mut m: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        trim(&mut m);
        if m.last() != Some(&1) || !is_irreducible(&m, p) {
            return Err(OracleError::ReducibleModulus);
        }
        let size = (p as u128).pow(m.len() as u32 - 1);
        if size > budget.0 as u128 || size > u32::MAX as u128 {
            return Err(OracleError::BudgetExceeded {
                size,
                budget: budget.0,
            });
        }
        Ok(Self::build(p, m))
    }

    fn build(p: u32, modulus: Vec<u32>) -> FiniteField {
        let degree = modulus.len() as u32 - 1;
        let size = (p as u64).pow(degree);
        let digit_weights = (0..degree).map(|i| p.pow(i)).collect();
        let mut field = FiniteField {
            p,
            degree,
            size,
            modulus,
            digit_weights,
            tables: None,
            trace_mask: 0,
        };
        if size <= TABLE_LIMIT && size > 2 {
            field.tables = Some(field.build_tables());
        }
        if p == 2 {
            field.trace_mask = (0..degree)
                .filter(|&i| field.trace_slow(1 << i) == 1)
                .fold(0, |m, i| m | (1 << i));
        }
        field
    }

    fn build_tables(&self) -> Tables {
        let order = self.size - 1;
        let factors = arith::prime_factors(order);
        let generator = (2..self.size as Fe)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.size as usize];
        let mut x: Fe = 1;
        for i in 0..order as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = self.mul_slow(x, generator);
        }
        Tables { exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        0..self.size as Fe
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.size
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut v = a;
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Fe {
        digits
            .iter()
            .zip(&self.digit_weights)
            .map(|(&d, &w)| (d % self.p) * w)
            .sum()
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> Fe {
        c.rem_euclid(self.p as i64) as Fe
    }

    pub fn zero(&self) -> Fe {
        0
    }

    pub fn one(&self) -> Fe {
        1
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y, mut out, mut w) = (a, b, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * w;
            x /= self.p;
            y /= self.p;
            w = w.wrapping_mul(self.p);
        }
        out
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut w) = (a, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
            w = w.wrapping_mul(self.p);
        }
        out
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size as u32 - 1;
                let mut s = t.log[a as usize] + t.log[b as usize];
                if s >= order {
                    s -= order;
                }
                t.exp[s as usize]
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            let mut prod: u64 = 0;
            for i in 0..self.degree {
                if b >> i & 1 == 1 {
                    prod ^= (a as u64) << i;
                }
            }
            let d = self.degree;
            let m: u64 = self
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
            for bit in (d..2 * d).rev() {
                if prod >> bit & 1 == 1 {
                    prod ^= m << (bit - d);
                }
            }
            return prod as Fe;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * self.degree as usize];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        self.from_digits(&fp_rem(&prod, &self.modulus, self.p))
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if let Some(t) = &self.tables {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let order = self.size - 1;
            let l = t.log[a as usize] as u128 * (e % order) as u128 % order as u128;
            return t.exp[l as usize];
        }
        self.pow_slow(a, e)
    }

    /// `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.pow(a, self.size - 2))
    }

    /// Absolute trace to `F_2`; characteristic 2 only.
    pub fn trace_f2(&self, a: Fe) -> u32 {
        debug_assert_eq!(self.p, 2);
        (a & self.trace_mask).count_ones() & 1
    }

    fn trace_slow(&self, a: Fe) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree {
            acc ^= x;
            x = self.mul_slow(x, x);
        }
        acc
    }

    /// The unique square root in characteristic 2 (Frobenius inverse).
    pub fn sqrt_char2(&self, a: Fe) -> Fe {
        debug_assert_eq!(self.p, 2);
        self.pow(a, 1u64 << (self.degree - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut ord = self.size - 1;
        for r in arith::prime_factors(self.size - 1) {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Some(ord)
    }
}

/// Embedding `F_{p^k} -> F_{p^{kn}}`, given by the image of `t`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<FiniteField>,
    target: Arc<FiniteField>,
    /// Images of `1, t, ..., t^{k-1}`.
    basis_images: Vec<Fe>,
}

impl Embedding {
    pub fn source(&self) -> &Arc<FiniteField> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteField> {
        &self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        let t = &self.target;
        self.source
            .digits(a)
            .iter()
            .zip(&self.basis_images)
            .fold(0, |acc, (&d, &img)| {
                t.add(acc, t.mul(t.from_int(d as i64), img))
            })
    }

    pub fn apply_all(&self, v: &[Fe]) -> Vec<Fe> {
        v.iter().map(|&a| self.apply(a)).collect()
    }
}

/// `F_{q^n}` over `base = F_q`, with an embedding of `base` found by
/// searching the extension for a root of the base modulus.
pub fn ff_tower(base: &Arc<FiniteField>, n: u32, budget: Budget) -> Result<Embedding, OracleError> {
    let target = FiniteField::canonical(base.p as u64, base.degree * n, budget)?;
    let k = base.degree as usize;
    let root = if k == 1 {
        0
    } else {
        target
            .elements()
            .find(|&r| {
                let v = base.modulus.iter().rev().fold(0, |acc, &c| {
                    target.add(target.mul(acc, r), target.from_int(c as i64))
                });
                v == 0
            })
            .ok_or(OracleError::NoRoot)?
    };
    let mut basis_images = Vec::with_capacity(k);
    let mut x = 1;
    for _ in 0..k {
        basis_images.push(x);
        x = target.mul(x, root);
    }
    Ok(Embedding {
        source: base.clone(),
        target,
        basis_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_small_cases() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
        // (1, 0, 1) < (1, 1, 0): x^3 + x^2 + 1 beats x^3 + x + 1
        assert_eq!(canonical_modulus(2, 3), vec![1, 0, 1, 1]);
        // x^2 + 1 over F_3 (c_0 = 1, c_1 = 0)
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_modulus(5, 1), vec![0, 1]);
    }

    #[test]
    fn tables_agree_with_slow_path() {
        for (p, k) in [(2u64, 6u32), (3, 4), (5, 2), (7, 1)] {
            let f = FiniteField::canonical(p, k, Budget::default()).unwrap();
            let n = f.size() as Fe;
            for a in 0..n.min(60) {
                for b in 0..n.min(60) {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b), "p={p} k={k} {a}*{b}");
                }
            }
            for a in 1..n {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = FiniteField::canonical(3, 3, Budget::default()).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.pow(a, f.size()), a);
            for b in [1, 5, 13, 26] {
                let c = 7;
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }

    #[test]
    fn trace_and_sqrt_in_char_two() {
        let f = FiniteField::canonical(2, 5, Budget::default()).unwrap();
        let zeros = f.elements().filter(|&a| f.trace_f2(a) == 0).count();
        assert_eq!(zeros, 16);
        for a in f.elements() {
            let r = f.sqrt_char2(a);
            assert_eq!(f.mul(r, r), a);
            assert_eq!(f.trace_f2(a), f.trace_slow(a));
        }
    }

    #[test]
    fn tower_embeddings_are_homomorphisms() {
        let f8 = FiniteField::canonical(2, 3, Budget::default()).unwrap();
        let emb = ff_tower(&f8, 2, Budget::default()).unwrap();
        assert_eq!(emb.target().size(), 64);
        for a in f8.elements() {
            for b in f8.elements() {
                let t = emb.target();
                assert_eq!(emb.apply(f8.mul(a, b)), t.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f8.add(a, b)), t.add(emb.apply(a), emb.apply(b)));
            }
        }
        let f2 = FiniteField::canonical(2, 1, Budget::default()).unwrap();
        let e = ff_tower(&f2, 3, Budget::default()).unwrap();
        assert_eq!((e.apply(0), e.apply(1)), (0, 1));
        let f5 = FiniteField::canonical(5, 1, Budget::default()).unwrap();
        let id = ff_tower(&f5, 1, Budget::default()).unwrap();
        assert!(f5.elements().all(|a| id.apply(a) == a));
    }

    #[test]
    fn budget_is_enforced() {
        let err = FiniteField::canonical(2, 30, Budget::default()).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }));
        assert!(FiniteField::with_modulus(2, &[1, 0, 1], Budget::default()).is_err());
    }
}
