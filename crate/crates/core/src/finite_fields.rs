//! Arithmetic in small finite fields `F_{p^m}`, point counting on reduced
//! hyperelliptic curves, Frobenius orbits, and closed-point counts on the
//! projective line.
//!
//! Fields are represented as `F_p[x]/(modulus)` with a deterministic modulus:
//! the monic irreducible of degree `m` whose ascending coefficient tuple
//! `(c_0, ..., c_{m-1})` is lexicographically smallest. Elements are
//! coefficient vectors of fixed length `m`, ascending.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::modp::{addm, poly_deriv, poly_gcd, poly_mul, poly_rem, subm, trim_zeros};
use crate::primes::is_prime;

/// Exhaustive enumeration guard: contexts above this order are refused.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FFError {
    NotOddPrime(u64),
    FieldTooLarge { p: u64, m: usize },
    NotIrreducible,
    WrongModulusShape,
    NonSeparable,
    EvenDegree,
}

impl fmt::Display for FFError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            FFError::FieldTooLarge { p, m } => {
                write!(f, "field of order {p}^{m} exceeds the enumeration guard")
            }
            FFError::NotIrreducible => write!(f, "modulus is not irreducible"),
            FFError::WrongModulusShape => {
                write!(f, "modulus must be monic of the stated degree with coefficients in [0, p)")
            }
            FFError::NonSeparable => write!(f, "polynomial is not separable over F_p"),
            FFError::EvenDegree => write!(f, "curve polynomial must have odd degree"),
        }
    }
}

impl core::error::Error for FFError {}

pub type FFElement = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFContext {
    p: u64,
    m: usize,
    /// Ascending, monic, length m+1.
    modulus: Vec<u64>,
}

impl FFContext {
    /// The field `F_{p^m}` with the deterministic modulus choice.
    pub fn new(p: u64, m: usize) -> Result<Self, FFError> {
        check_shape(p, m)?;
        let modulus = smallest_irreducible(p, m);
        Ok(FFContext { p, m, modulus })
    }

    /// Same field presented by a caller-chosen irreducible modulus
    /// (ascending coefficients, monic, degree m).
    pub fn with_modulus(p: u64, m: usize, modulus: Vec<u64>) -> Result<Self, FFError> {
        check_shape(p, m)?;
        if modulus.len() != m + 1
            || modulus[m] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FFError::WrongModulusShape);
        }
        if !is_irreducible(&modulus, p) {
            return Err(FFError::NotIrreducible);
        }
        Ok(FFContext { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FFElement {
        vec![0; self.m]
    }

    pub fn one(&self) -> FFElement {
        self.from_prime_field(1)
    }

    pub fn from_prime_field(&self, c: u64) -> FFElement {
        let mut e = self.zero();
        e[0] = c % self.p;
        e
    }

    /// The element whose base-`p` digit expansion is `idx` (digit k is the
    /// coefficient of `x^k`); a bijection from `0..order()`.
    pub fn element(&self, idx: u64) -> FFElement {
        debug_assert!(idx < self.order());
        let mut e = self.zero();
        let mut rest = idx;
        for slot in e.iter_mut() {
            *slot = rest % self.p;
            rest /= self.p;
        }
        e
    }

    pub fn index_of(&self, e: &[u64]) -> u64 {
        debug_assert_eq!(e.len(), self.m);
        e.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FFElement {
        a.iter().zip(b).map(|(&x, &y)| addm(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FFElement {
        a.iter().zip(b).map(|(&x, &y)| subm(x, y, self.p)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> FFElement {
        a.iter().map(|&x| subm(0, x, self.p)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FFElement {
        let mut at = a.to_vec();
        let mut bt = b.to_vec();
        trim_zeros(&mut at);
        trim_zeros(&mut bt);
        let prod = poly_mul(&at, &bt, self.p);
        self.pad(poly_rem(prod, &self.modulus, self.p))
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> FFElement {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &[u64]) -> FFElement {
        debug_assert!(!self.is_zero(a));
        self.pow(a, self.order() - 2)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// The field automorphism `x -> x^p`.
    pub fn frobenius(&self, a: &[u64]) -> FFElement {
        self.pow(a, self.p)
    }

    /// Evaluates a polynomial with `F_p` coefficients (leading first) at a
    /// field element.
    pub fn eval_descending(&self, coeffs: &[u64], x: &[u64]) -> FFElement {
        let mut acc = self.zero();
        for &c in coeffs {
            acc = self.mul(&acc, x);
            acc[0] = addm(acc[0], c % self.p, self.p);
        }
        acc
    }

    fn pad(&self, mut v: Vec<u64>) -> FFElement {
        v.resize(self.m, 0);
        v
    }
}

fn check_shape(p: u64, m: usize) -> Result<(), FFError> {
    if p == 2 || !is_prime(p) {
        return Err(FFError::NotOddPrime(p));
    }
    if m == 0 || m > 20 || p.checked_pow(m as u32).is_none_or(|q| q > MAX_FIELD_ORDER) {
        return Err(FFError::FieldTooLarge { p, m });
    }
    Ok(())
}

/// Lexicographically smallest (by ascending coefficient tuple) monic
/// irreducible of degree `m` over `F_p`.
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut tuple = vec![0u64; m];
    loop {
        let mut cand = tuple.clone();
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
        // next tuple in lexicographic order, last coordinate fastest would be
        // colex; advance the last index that can still increase, treating the
        // tuple as a big-endian counter on (c_0, ..., c_{m-1})
        let mut k = m;
        loop {
            assert!(k > 0, "some monic polynomial of degree m is irreducible");
            k -= 1;
            if tuple[k] + 1 < p {
                tuple[k] += 1;
                for t in tuple.iter_mut().skip(k + 1) {
                    *t = 0;
                }
                break;
            }
        }
    }
}

/// Irreducibility over `F_p`: `x^{p^m} = x (mod f)` and, for each prime
/// `q | m`, `gcd(x^{p^{m/q}} - x mod f, f) = 1`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let frob_iterate = |k: usize| -> Vec<u64> {
        // x^{p^k} mod f by k successive p-th powers
        let mut t = vec![0, 1];
        for _ in 0..k {
            t = poly_powmod(&t, p, f, p);
        }
        t
    };
    let x = vec![0, 1];
    if frob_iterate(m) != x {
        return false;
    }
    let mut prime_factors = Vec::new();
    let mut rest = m;
    let mut q = 2;
    while q * q <= rest {
        if rest % q == 0 {
            prime_factors.push(q);
            while rest % q == 0 {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        prime_factors.push(rest);
    }
    for q in prime_factors {
        let mut t = frob_iterate(m / q);
        if t.len() < 2 {
            t.resize(2, 0);
        }
        t[1] = subm(t[1], 1, p); // t - x
        trim_zeros(&mut t);
        if poly_gcd(t, f.to_vec(), p).len() != 1 {
            return false;
        }
    }
    true
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut b = poly_rem(base.to_vec(), f, p);
    let mut acc = vec![1];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(poly_mul(&acc, &b, p), f, p);
        }
        b = poly_rem(poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// A point of the projective curve `y^2 = f(x)` over a fixed `FFContext`.
/// The odd-degree model has exactly one point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine(FFElement, FFElement),
}

fn check_curve_poly(f_desc: &[u64], p: u64) -> Result<(), FFError> {
    if f_desc.is_empty() || f_desc.len() % 2 != 0 {
        // length = degree + 1, so odd degree means even length
        return Err(FFError::EvenDegree);
    }
    let mut asc: Vec<u64> = f_desc.iter().rev().map(|&c| c % p).collect();
    trim_zeros(&mut asc);
    if asc.len() != f_desc.len() {
        return Err(FFError::NonSeparable); // leading coefficient vanished
    }
    let deriv = poly_deriv(&asc, p);
    if deriv.is_empty() || poly_gcd(asc, deriv, p).len() != 1 {
        return Err(FFError::NonSeparable);
    }
    Ok(())
}

/// Number of square roots of each field element, indexed by `element` index.
fn square_root_table(ctx: &FFContext) -> Vec<Vec<FFElement>> {
    let q = ctx.order();
    let mut table: Vec<Vec<FFElement>> = vec![Vec::new(); q as usize];
    for i in 0..q {
        let y = ctx.element(i);
        let s = ctx.mul(&y, &y);
        table[ctx.index_of(&s) as usize].push(y);
    }
    table
}

/// `#{(x, y) in F_{p^m}^2 : y^2 = f(x)}` by exhaustive enumeration with a
/// precomputed square table. The projective count is this value plus one.
pub fn count_affine_points(f_desc: &[u64], ctx: &FFContext) -> Result<u64, FFError> {
    check_curve_poly(f_desc, ctx.p())?;
    let table = square_root_table(ctx);
    let mut count = 0u64;
    for i in 0..ctx.order() {
        let x = ctx.element(i);
        let v = ctx.eval_descending(f_desc, &x);
        count += table[ctx.index_of(&v) as usize].len() as u64;
    }
    Ok(count)
}

/// All points of the projective curve, infinity first, affine points ordered
/// by `(index(x), index(y))`.
pub fn curve_points(f_desc: &[u64], ctx: &FFContext) -> Result<Vec<CurvePoint>, FFError> {
    check_curve_poly(f_desc, ctx.p())?;
    let table = square_root_table(ctx);
    let mut pts = vec![CurvePoint::Infinity];
    for i in 0..ctx.order() {
        let x = ctx.element(i);
        let v = ctx.eval_descending(f_desc, &x);
        let mut roots = table[ctx.index_of(&v) as usize].clone();
        roots.sort_by_key(|y| ctx.index_of(y));
        for y in roots {
            pts.push(CurvePoint::Affine(x.clone(), y));
        }
    }
    Ok(pts)
}

/// Partitions points into orbits of the coordinatewise Frobenius
/// `(x, y) -> (x^p, y^p)`; infinity is a fixed point. Orbit sizes divide `m`.
pub fn frobenius_orbits(points: &[CurvePoint], ctx: &FFContext) -> Vec<Vec<CurvePoint>> {
    let step = |pt: &CurvePoint| -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(ctx.frobenius(x), ctx.frobenius(y))
            }
        }
    };
    let mut remaining: BTreeSet<CurvePoint> = points.iter().cloned().collect();
    let mut orbits = Vec::new();
    while let Some(start) = remaining.iter().next().cloned() {
        let mut orbit = Vec::new();
        let mut cur = start.clone();
        loop {
            remaining.remove(&cur);
            orbit.push(cur.clone());
            cur = step(&cur);
            if cur == start {
                break;
            }
        }
        orbits.push(orbit);
    }
    orbits
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut rest = n;
    let mut factors = 0;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if rest > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of degree-`d` closed points of the projective line over `F_p`:
/// `p + 1` for `d = 1` and `(1/d) sum_{e|d} mu(e) (p^{d/e} + 1)` for `d > 1`.
pub fn closed_points_p1(p: u64, d: u32) -> u64 {
    assert!(d >= 1);
    if d == 1 {
        return p + 1;
    }
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            let term = (p as i128).pow(d / e) + 1;
            total += moebius(e as u64) as i128 * term;
        }
    }
    debug_assert!(total >= 0 && total % d as i128 == 0);
    (total / d as i128) as u64
}

/// A root of `small`'s modulus inside `big`, smallest by element index;
/// exists exactly when `small.m` divides `big.m` (same `p`). Mapping the
/// generator to this root extends to a field embedding.
pub fn embedding_root(small: &FFContext, big: &FFContext) -> Option<FFElement> {
    if small.p() != big.p() || big.m() % small.m() != 0 {
        return None;
    }
    let modulus_desc: Vec<u64> = small.modulus().iter().rev().copied().collect();
    (0..big.order())
        .map(|i| big.element(i))
        .find(|beta| big.is_zero(&big.eval_descending(&modulus_desc, beta)))
}

/// Image of `e` under the embedding sending the subfield generator to
/// `root` (a root of the subfield modulus inside `big`).
pub fn embed(big: &FFContext, root: &FFElement, e: &[u64]) -> FFElement {
    let mut acc = big.zero();
    for &c in e.iter().rev() {
        acc = big.mul(&acc, root);
        acc[0] = addm(acc[0], c, big.p());
    }
    acc
}
