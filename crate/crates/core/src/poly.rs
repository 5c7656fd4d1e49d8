//! Dense univariate polynomials over the integers.
//!
//! Canonical invariant: `coeffs` is ascending (constant term first) with no
//! trailing zero, so `coeffs.len() == degree + 1` for nonzero polynomials and
//! the zero polynomial is the empty vector.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_ascending(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds from descending coefficients (leading term first).
    pub fn from_descending(mut coeffs: Vec<BigInt>) -> Self {
        coeffs.reverse();
        Self::from_ascending(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial answers `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Ascending coefficient slice (constant term first).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPoly::from_ascending(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_ascending(out)
    }

    /// Sylvester-matrix resultant of `self` (degree n) and `other` (degree m),
    /// by fraction-free Bareiss elimination over the integers.
    /// Zero polynomials resolve by the usual convention (`Res(f, 0) = 0` for
    /// `deg f >= 1`).
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::zero();
        };
        let Some(m) = other.degree() else {
            return if n == 0 { BigInt::one() } else { BigInt::zero() };
        };
        if n == 0 && m == 0 {
            return BigInt::one();
        }
        if n == 0 {
            return self.coeffs[0].pow(m as u32);
        }
        if m == 0 {
            return other.coeffs[0].pow(n as u32);
        }
        let mat = sylvester_matrix(self, other);
        bareiss_determinant(mat)
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    /// The division is exact for any nonconstant integer polynomial.
    pub fn discriminant(&self) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::zero();
        };
        if n == 0 {
            return BigInt::zero();
        }
        let res = self.resultant(&self.derivative());
        let signed = if (n * (n - 1) / 2) % 2 == 0 { res } else { -res };
        let lc = self.leading().expect("nonzero by degree check");
        let (q, r) = num_integer::Integer::div_rem(&signed, lc);
        debug_assert!(r.is_zero(), "discriminant division is always exact");
        q
    }

    /// Renders with `var` as the indeterminate, descending powers.
    pub fn display(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lead = out.is_empty();
            let mag = c.abs();
            if lead {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                let _ = write!(out, "{mag}");
            }
            if k > 0 {
                if !unit_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    let _ = write!(out, "^{k}");
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

/// Sylvester matrix of (f, g), size (n + m) with n = deg f, m = deg g.
/// Rows hold descending coefficients shifted across the columns.
fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let n = f.degree().expect("nonzero");
    let m = g.degree().expect("nonzero");
    let size = n + m;
    let mut mat = alloc::vec![alloc::vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (j, k) in (0..=n).enumerate() {
            mat[row][row + j] = f.coeffs[n - k].clone();
        }
    }
    for row in 0..n {
        for (j, k) in (0..=m).enumerate() {
            mat[m + row][row + j] = g.coeffs[m - k].clone();
        }
    }
    mat
}

/// Fraction-free determinant (Bareiss): every division below is exact.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero(), "Bareiss divisions are exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
