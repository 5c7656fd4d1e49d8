//! Exact arithmetic in `Q(sqrt(D))` for squarefree `D != 0, 1`.
//!
//! Elements are `a + b*sqrt(D)` with rational `a, b`; `D` travels alongside
//! each element rather than in a context object so values from different
//! fields cannot be mixed silently (operations check it).

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub d: BigInt,
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExt {
    pub fn new(d: BigInt, a: BigRational, b: BigRational) -> Self {
        QuadExt { d, a, b }
    }

    pub fn from_rational(d: BigInt, a: BigRational) -> Self {
        QuadExt {
            d,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero(d: BigInt) -> Self {
        Self::from_rational(d, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        QuadExt {
            d: self.d.clone(),
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - D b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
        QuadExt {
            d: self.d.clone(),
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn neg(&self) -> Self {
        QuadExt {
            d: self.d.clone(),
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
        let d = BigRational::from_integer(self.d.clone());
        QuadExt {
            d: self.d.clone(),
            a: &self.a * &other.a + &d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Evaluates an integer polynomial (ascending coefficients) at `self`.
    pub fn eval_poly(&self, coeffs: &[BigInt]) -> Self {
        let mut acc = QuadExt::zero(self.d.clone());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            acc.a += BigRational::from_integer(c.clone());
        }
        acc
    }

    /// A square root in `Q(sqrt(D))` when one exists, `None` otherwise.
    /// The returned root is sign-normalized: rational part positive, or zero
    /// rational part with nonnegative irrational part.
    pub fn sqrt(&self) -> Option<QuadExt> {
        let root = self.sqrt_any()?;
        Some(normalize_sign(root))
    }

    fn sqrt_any(&self) -> Option<QuadExt> {
        let d = self.d.clone();
        if self.b.is_zero() {
            // y^2 = a: either y rational or y a pure multiple of sqrt(D).
            if let Some(s) = rational_sqrt(&self.a) {
                return Some(QuadExt::from_rational(d, s));
            }
            let over_d = &self.a / BigRational::from_integer(d.clone());
            if let Some(t) = rational_sqrt(&over_d) {
                return Some(QuadExt::new(d, BigRational::zero(), t));
            }
            return None;
        }
        // (s + t sqrt(D))^2 = a + b sqrt(D) with b != 0 forces s != 0,
        // t = b/(2s), and s^2 = (a +- w)/2 where w^2 = norm = a^2 - D b^2.
        let w = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&self.a + &w) / &two, (&self.a - &w) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(s) = rational_sqrt(&cand) {
                if s.is_zero() {
                    continue;
                }
                let t = &self.b / (&two * &s);
                let root = QuadExt::new(self.d.clone(), s, t);
                if root.square() == *self {
                    return Some(root);
                }
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_any().is_some()
    }
}

fn normalize_sign(y: QuadExt) -> QuadExt {
    let flip = y.a.is_negative() || (y.a.is_zero() && y.b.is_negative());
    if flip {
        y.neg()
    } else {
        y
    }
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// True when `d` is squarefree (trial division; inputs are search-bound sized).
pub fn is_squarefree(d: &BigInt) -> bool {
    let mut n = d.abs();
    if n.is_zero() {
        return false;
    }
    let mut p = BigInt::from(2);
    while &(&p * &p) <= &n {
        let sq = &p * &p;
        if (&n % &sq).is_zero() {
            return false;
        }
        while (&n % &p).is_zero() {
            n /= &p;
        }
        p += 1;
    }
    true
}

/// Squarefree `D` with `0 < |D| <= bound`, excluding `D = 1`, ascending by
/// `(|D|, D)`.
pub fn squarefree_discriminants(bound: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    for mag in 1..=bound {
        for d in [-(mag as i64), mag as i64] {
            if d == 1 {
                continue;
            }
            let d = BigInt::from(d);
            if is_squarefree(&d) {
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn el(d: i64, a: (i64, i64), b: (i64, i64)) -> QuadExt {
        QuadExt::new(BigInt::from(d), rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn arithmetic_basics() {
        // (1 + sqrt(2))^2 = 3 + 2 sqrt(2)
        let x = el(2, (1, 1), (1, 1));
        assert_eq!(x.square(), el(2, (3, 1), (2, 1)));
        assert_eq!(x.norm(), rat(-1, 1));
        assert_eq!(x.add(&x.conjugate()), el(2, (2, 1), (0, 1)));
    }

    #[test]
    fn sqrt_recovers_squares() {
        // Brute square/retrieve over a grid of elements in several fields.
        for d in [-3i64, -2, -1, 2, 3, 5] {
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    let x = el(d, (a, 2), (b, 3));
                    let sq = x.square();
                    let root = sq.sqrt().expect("squares have roots");
                    assert_eq!(root.square(), sq, "d={d} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn sqrt_rejects_nonsquares() {
        assert!(!el(-1, (2, 1), (0, 1)).is_square()); // 2 not a square in Q(i)
        assert!(!el(2, (0, 1), (1, 1)).is_square()); // sqrt(2) not a square
        assert!(!el(5, (2, 1), (3, 1)).is_square());
        // -1 = i^2 is not a square in Q(sqrt(2)) but is in Q(i).
        assert!(!el(2, (-1, 1), (0, 1)).is_square());
        assert!(el(-1, (-1, 1), (0, 1)).is_square());
    }

    #[test]
    fn sqrt_sign_normalization() {
        let y = el(-1, (0, 1), (-1, 1)).square(); // (-i)^2 = -1
        let root = y.sqrt().unwrap();
        assert_eq!(root, el(-1, (0, 1), (1, 1))); // canonical root is +i
    }

    #[test]
    fn poly_eval_matches_rational_path() {
        // f = x^3 - x + 1 at 1/2 + sqrt(3)/3 against component expansion.
        let f = [BigInt::from(1), BigInt::from(-1), BigInt::from(0), BigInt::from(1)];
        let x = el(3, (1, 2), (1, 3));
        let v = x.eval_poly(&f);
        let x2 = x.square();
        let x3 = x2.mul(&x);
        let expect = x3.add(&x.neg()).add(&QuadExt::from_rational(BigInt::from(3), rat(1, 1)));
        assert_eq!(v, expect);
    }

    #[test]
    fn squarefree_filter() {
        assert!(is_squarefree(&BigInt::from(-1)));
        assert!(is_squarefree(&BigInt::from(30)));
        assert!(!is_squarefree(&BigInt::from(12)));
        assert!(!is_squarefree(&BigInt::from(-4)));
        let ds = squarefree_discriminants(3);
        let as_i64: Vec<i64> = ds.iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(as_i64, alloc::vec![-1, -2, 2, -3, 3]);
    }
}
