//! Univariate polynomials over a [`FiniteField`], ascending coefficients.

use super::field::{Fe, FiniteField};

pub fn trim(mut v: Vec<Fe>) -> Vec<Fe> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn eval(f: &FiniteField, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn add(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn sub(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let neg: Vec<Fe> = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &neg)
}

pub fn scale(f: &FiniteField, a: &[Fe], c: Fe) -> Vec<Fe> {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn pow(f: &FiniteField, a: &[Fe], e: u32) -> Vec<Fe> {
    (0..e).fold(vec![1], |acc, _| mul(f, &acc, a))
}

/// Remainder of `a` by a nonzero `m`.
pub fn rem(f: &FiniteField, a: &[Fe], m: &[Fe]) -> Vec<Fe> {
    let m = trim(m.to_vec());
    let dm = m
        .len()
        .checked_sub(1)
        .expect("division by the zero polynomial");
    let inv_lead = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = f.mul(r[top], inv_lead);
        let shift = top - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(factor, c));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &FiniteField, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn monic(f: &FiniteField, a: &[Fe]) -> Vec<Fe> {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(f, a, f.inv(lead).expect("trimmed")),
    }
}

pub fn derivative(f: &FiniteField, a: &[Fe]) -> Vec<Fe> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect(),
    )
}

/// Number of distinct roots of a nonzero `a` in `f`, as
/// `deg gcd(a, Y^Q - Y)` with `Y^Q mod a` built by repeated `p`-th powers.
pub fn count_distinct_roots(f: &FiniteField, a: &[Fe]) -> usize {
    let a = trim(a.to_vec());
    match degree(&a) {
        None => return f.size() as usize,
        Some(0) => return 0,
        Some(_) => {}
    }
    let p = f.characteristic();
    let mut y_q = rem(f, &[0, 1], &a);
    for _ in 0..f.degree() {
        y_q = pow_mod(f, &y_q, p, &a);
    }
    let diff = sub(f, &y_q, &[0, 1]);
    degree(&gcd(f, &a, &diff)).unwrap_or_else(|| degree(&a).unwrap())
}

fn pow_mod(f: &FiniteField, base: &[Fe], mut e: u32, m: &[Fe]) -> Vec<Fe> {
    let mut acc = vec![1];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}
