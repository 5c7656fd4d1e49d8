//! Hyperelliptic curve models `y^2 = f(x)` over the rationals.
//!
//! `f` is monic of odd degree `2g+1` with integer coefficients and must be
//! separable. A model is *depressed* when the `x^{2g}` coefficient vanishes;
//! heights and minimality are defined only for depressed models, where the
//! coefficients are indexed `a_i = coeff of x^{2g+1-i}` for `i = 2..=2g+1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_integer::{gcd, Integer};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::modp;
use crate::poly::IntPoly;
use crate::primes::{is_prime, primes_up_to};
use crate::quadratic_field::{squarefree_discriminants, QuadExt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveError {
    GenusTooSmall(usize),
    WrongDegree { expected: usize, got: Option<usize> },
    NotMonic,
    NotSeparable,
    HeightNeedsDepressed,
    EvenPrime,
    NotPrime(u64),
    BadReduction(u64),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::GenusTooSmall(g) => write!(f, "genus must be at least 2, got {g}"),
            CurveError::WrongDegree { expected, got: Some(d) } => {
                write!(f, "f must have degree {expected}, got {d}")
            }
            CurveError::WrongDegree { expected, got: None } => {
                write!(f, "f must have degree {expected}, got the zero polynomial")
            }
            CurveError::NotMonic => write!(f, "f must be monic"),
            CurveError::NotSeparable => write!(f, "f must be separable (nonzero discriminant)"),
            CurveError::HeightNeedsDepressed => {
                write!(f, "height defined only for minimal-form models")
            }
            CurveError::EvenPrime => {
                write!(f, "even prime not supported for y^2 = f(x) models")
            }
            CurveError::NotPrime(p) => write!(f, "{p} is not prime"),
            CurveError::BadReduction(p) => write!(f, "bad reduction at {p}"),
        }
    }
}

impl core::error::Error for CurveError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    genus: usize,
    f: IntPoly,
    depressed: bool,
}

impl CurveModel {
    /// Builds from the coefficients of `f`, leading first.
    pub fn new(genus: usize, coeffs_descending: Vec<BigInt>) -> Result<Self, CurveError> {
        Self::from_poly(genus, IntPoly::from_descending(coeffs_descending))
    }

    pub fn from_poly(genus: usize, f: IntPoly) -> Result<Self, CurveError> {
        if genus < 2 {
            return Err(CurveError::GenusTooSmall(genus));
        }
        let expected = 2 * genus + 1;
        if f.degree() != Some(expected) {
            return Err(CurveError::WrongDegree {
                expected,
                got: f.degree(),
            });
        }
        if !f.is_monic() {
            return Err(CurveError::NotMonic);
        }
        if !is_separable(&f) {
            return Err(CurveError::NotSeparable);
        }
        let depressed = f.coeff(2 * genus).is_zero();
        Ok(CurveModel { genus, f, depressed })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn depressed(&self) -> bool {
        self.depressed
    }

    /// Depressed-form coefficient `a_i`, the coefficient of `x^{2g+1-i}`.
    pub fn a(&self, i: usize) -> BigInt {
        assert!((2..=2 * self.genus + 1).contains(&i), "index out of range");
        self.f.coeff(2 * self.genus + 1 - i)
    }

    pub fn discriminant(&self) -> BigInt {
        self.f.discriminant()
    }

    /// The maximizing pair of `max_i |a_i|^{1/i}`, with ties resolved toward
    /// the smallest index.
    pub fn height(&self) -> Result<Height, CurveError> {
        if !self.depressed {
            return Err(CurveError::HeightNeedsDepressed);
        }
        let mut best: Option<Height> = None;
        for i in 2..=2 * self.genus + 1 {
            let abs = self.a(i).abs();
            if abs.is_zero() {
                continue;
            }
            let cand = Height { abs, index: i };
            match &best {
                None => best = Some(cand),
                Some(b) if cand > *b => best = Some(cand),
                _ => {}
            }
        }
        // Separability rules out f = x^{2g+1}, so some a_i is nonzero.
        Ok(best.expect("separable model has a nonzero lower coefficient"))
    }

    /// The smallest prime `p` with `p^{2i} | a_i` for every `i >= 2`, if one
    /// exists. `None` means the model is minimal.
    pub fn minimality_witness(&self) -> Result<Option<u64>, CurveError> {
        if !self.depressed {
            return Err(CurveError::HeightNeedsDepressed);
        }
        // A witness divides every nonzero a_i and is at most
        // min |a_i|^{1/(2i)} over the nonzero ones.
        let mut bound: Option<BigInt> = None;
        for i in 2..=2 * self.genus + 1 {
            let abs = self.a(i).abs();
            if abs.is_zero() {
                continue;
            }
            let root = abs.nth_root(2 * i as u32);
            bound = Some(match bound {
                None => root,
                Some(b) => b.min(root),
            });
        }
        let bound = bound
            .expect("separable model has a nonzero lower coefficient")
            .to_u64()
            .unwrap_or(u64::MAX);
        for p in primes_up_to(bound) {
            let witness = (2..=2 * self.genus + 1).all(|i| {
                let modulus = BigInt::from(p).pow(2 * i as u32);
                self.a(i).mod_floor(&modulus).is_zero()
            });
            if witness {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    pub fn is_minimal(&self) -> Result<bool, CurveError> {
        Ok(self.minimality_witness()?.is_none())
    }

    /// True iff `p` does not divide `disc(f)`. Decided without computing the
    /// integer discriminant: for monic `f`, `p` divides `disc(f)` exactly when
    /// `f mod p` has a repeated factor.
    pub fn good_reduction(&self, p: u64) -> Result<bool, CurveError> {
        check_odd_prime(p)?;
        let fbar = modp::reduce_int_poly(&self.f, p);
        let deriv = modp::poly_deriv(&fbar, p);
        if deriv.is_empty() {
            return Ok(false);
        }
        Ok(modp::poly_gcd(fbar, deriv, p).len() == 1)
    }

    /// Coefficients of `f mod p` in `[0, p)`, leading first, all `2g+2`
    /// entries present.
    pub fn reduce_mod(&self, p: u64) -> Result<Vec<u64>, CurveError> {
        if !self.good_reduction(p)? {
            return Err(CurveError::BadReduction(p));
        }
        let pb = BigInt::from(p);
        let n = 2 * self.genus + 1;
        let coeffs = (0..=n)
            .rev()
            .map(|k| {
                self.f
                    .coeff(k)
                    .mod_floor(&pb)
                    .to_u64()
                    .expect("residue fits u64")
            })
            .collect();
        Ok(coeffs)
    }

    /// Brute-force search for points `(x, y)` with `x = (a + b sqrt(D))/c`
    /// irrational: `D` squarefree with `|D| <= bound`, `|a|, b, c <= bound`,
    /// `b >= 1`, `c >= 1`, `gcd(a, b, c) = 1`. Taking `b > 0` keeps one
    /// representative per Galois-conjugate pair of x-coordinates. Both `y` and
    /// `-y` are reported (one entry when `y = 0`). Output is sorted by
    /// `(|D|, D, x, y)`.
    pub fn search_quadratic_points(&self, bound: u32) -> Vec<QuadraticPoint> {
        let n = self.f.degree().expect("curve polynomial is nonzero");
        let coeffs = self.f.coeffs();
        let bound = bound as i64;
        let mut found = Vec::new();
        for d in squarefree_discriminants(bound as u64) {
            for c in 1..=bound {
                // c^n f((a + b sqrt(D))/c) stays in Z[sqrt(D)]; precompute
                // the c powers used by the Horner loop below.
                let mut cpow = Vec::with_capacity(n + 1);
                let mut acc = BigInt::from(1);
                for _ in 0..=n {
                    cpow.push(acc.clone());
                    acc *= c;
                }
                for a in -bound..=bound {
                    for b in 1..=bound {
                        if gcd(gcd(a.unsigned_abs(), b as u64), c as u64) != 1 {
                            continue;
                        }
                        let (pa, pb) = horner_int_pair(coeffs, &d, a, b, &cpow);
                        let cn = BigRational::from_integer(cpow[n].clone());
                        let u = BigRational::from_integer(pa) / &cn;
                        let v = BigRational::from_integer(pb) / &cn;
                        let fx = QuadExt::new(d.clone(), u, v);
                        if let Some(y) = fx.sqrt() {
                            let x = QuadExt::new(
                                d.clone(),
                                BigRational::new(BigInt::from(a), BigInt::from(c)),
                                BigRational::new(BigInt::from(b), BigInt::from(c)),
                            );
                            if y.is_zero() {
                                found.push(QuadraticPoint {
                                    disc: d.clone(),
                                    x,
                                    y,
                                });
                            } else {
                                found.push(QuadraticPoint {
                                    disc: d.clone(),
                                    x: x.clone(),
                                    y: y.clone(),
                                });
                                found.push(QuadraticPoint {
                                    disc: d.clone(),
                                    x,
                                    y: y.neg(),
                                });
                            }
                        }
                    }
                }
            }
        }
        found.sort_by(|l, r| {
            l.disc
                .abs()
                .cmp(&r.disc.abs())
                .then_with(|| l.disc.cmp(&r.disc))
                .then_with(|| l.x.a.cmp(&r.x.a))
                .then_with(|| l.x.b.cmp(&r.x.b))
                .then_with(|| l.y.a.cmp(&r.y.a))
                .then_with(|| l.y.b.cmp(&r.y.b))
        });
        found
    }
}

/// `c^n f((a + b sqrt(D))/c)` as an integer pair `(P, Q)` meaning
/// `P + Q sqrt(D)`; `cpow[k] = c^k` and `coeffs` ascending of degree `n`.
fn horner_int_pair(
    coeffs: &[BigInt],
    d: &BigInt,
    a: i64,
    b: i64,
    cpow: &[BigInt],
) -> (BigInt, BigInt) {
    let n = coeffs.len() - 1;
    let (mut pa, mut pb) = (BigInt::zero(), BigInt::zero());
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    for (k, ck) in coeffs.iter().enumerate().rev() {
        let next_a = &pa * &ab + &pb * &bb * d + ck * &cpow[n - k];
        let next_b = &pa * &bb + &pb * &ab;
        pa = next_a;
        pb = next_b;
    }
    (pa, pb)
}

fn check_odd_prime(p: u64) -> Result<(), CurveError> {
    if p == 2 {
        return Err(CurveError::EvenPrime);
    }
    if !is_prime(p) {
        return Err(CurveError::NotPrime(p));
    }
    Ok(())
}

/// Separability test: a prime `p` with `gcd(f, f') = 1` over `F_p` certifies
/// separability over the rationals; if no small prime certifies, fall back to
/// the exact gcd over the rationals.
fn is_separable(f: &IntPoly) -> bool {
    for p in primes_up_to(100) {
        let fbar = modp::reduce_int_poly(f, p);
        if fbar.len() != f.coeffs().len() {
            continue; // leading coefficient dropped; certificate unavailable
        }
        let deriv = modp::poly_deriv(&fbar, p);
        if deriv.is_empty() {
            continue;
        }
        if modp::poly_gcd(fbar, deriv, p).len() == 1 {
            return true;
        }
    }
    rational_gcd_is_constant(f)
}

fn rational_gcd_is_constant(f: &IntPoly) -> bool {
    let to_rat = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut a = to_rat(f);
    let mut b = to_rat(&f.derivative());
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let q = a.last().unwrap() / &lead;
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                let sub = &q * bk;
                a[shift + k] -= sub;
            }
            a.pop();
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Curve height `max_i |a_i|^{1/i}` as the maximizing pair `(|a_i|, i)`.
/// Comparison is exact via cross-powers: `|a|^{1/i} < |b|^{1/j}` iff
/// `|a|^j < |b|^i`. Floating point appears only in `approx`.
#[derive(Clone, Debug)]
pub struct Height {
    abs: BigInt,
    index: usize,
}

impl Height {
    pub fn abs(&self) -> &BigInt {
        &self.abs
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Display-only decimal approximation of `|a_i|^{1/i}`.
    pub fn approx(&self) -> f64 {
        let a = self.abs.to_f64().unwrap_or(f64::INFINITY);
        libm::pow(a, 1.0 / self.index as f64)
    }

    pub fn display(&self) -> String {
        use alloc::format;
        format!("|{}|^(1/{}) ~ {:.4}", self.abs, self.index, self.approx())
    }
}

impl PartialEq for Height {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Height {}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> Ordering {
        let left = self.abs.pow(other.index as u32);
        let right = other.abs.pow(self.index as u32);
        left.cmp(&right)
    }
}

/// A curve point with irrational `x`-coordinate in a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPoint {
    pub disc: BigInt,
    pub x: QuadExt,
    pub y: QuadExt,
}

impl QuadraticPoint {
    /// Re-checks `y^2 = f(x)` with field arithmetic over `Q(sqrt(D))`,
    /// independent of the integer-pair evaluation used by the search.
    pub fn verify(&self, curve: &CurveModel) -> bool {
        self.x.d == self.disc
            && self.y.d == self.disc
            && !self.x.b.is_zero()
            && self.y.square() == self.x.eval_poly(curve.f().coeffs())
    }
}
