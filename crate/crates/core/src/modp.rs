//! Scalar and dense-polynomial arithmetic modulo a `u64` prime.
//!
//! Polynomials are ascending coefficient vectors with no trailing zero
//! (the zero polynomial is the empty vector), mirroring `IntPoly`.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

pub(crate) fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128) + (b as u128);
    (s % p as u128) as u64
}

pub(crate) fn subm(a: u64, b: u64, p: u64) -> u64 {
    addm(a, p - b % p, p)
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, p);
        }
        base = mulm(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime `p` (Fermat); `a` must be nonzero mod `p`.
pub(crate) fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

pub(crate) fn trim_zeros(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Coefficients of `f` mod `p`, ascending, trailing zeros trimmed.
pub(crate) fn reduce_int_poly(f: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
        .collect();
    trim_zeros(&mut out);
    out
}

pub(crate) fn poly_deriv(f: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mulm(c, (k as u64) % p, p))
        .collect();
    trim_zeros(&mut out);
    out
}

/// Remainder of `a` by nonzero `b` over `F_p`.
pub(crate) fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    debug_assert!(b.last().is_some_and(|&l| l != 0));
    let lead_inv = invm(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let q = mulm(*a.last().unwrap(), lead_inv, p);
        let shift = a.len() - b.len();
        if q != 0 {
            for (k, &bk) in b.iter().enumerate() {
                a[shift + k] = subm(a[shift + k], mulm(q, bk, p), p);
            }
        }
        a.pop();
        trim_zeros(&mut a);
    }
    a
}

/// Monic gcd over `F_p`; empty vector iff both inputs are zero.
pub(crate) fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_zeros(&mut a);
    trim_zeros(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = invm(lead, p);
        for c in a.iter_mut() {
            *c = mulm(*c, inv, p);
        }
    }
    a
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(ai, bj, p), p);
        }
    }
    trim_zeros(&mut out);
    out
}
