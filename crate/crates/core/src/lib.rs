//! Exact-arithmetic machinery for bounding low-degree algebraic points on
//! odd-degree hyperelliptic curves `y^2 = f(x)`.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; no floating point enters any decision. The crate is `no_std`
//! (with `alloc`) so the algorithmic core stays independent of IO; the
//! companion CLI crate carries file formats and serialization.
//!
//! Module map:
//! - [`poly`]: dense integer polynomials, resultants, discriminants.
//! - [`quadratic_field`]: exact arithmetic and square roots in `Q(sqrt(D))`.
//! - [`curves`]: odd hyperelliptic curve models, heights, minimality,
//!   reduction, quadratic-point search.
//! - [`finite_fields`]: small finite fields `F_{p^m}`, point counting,
//!   Frobenius orbits, closed points of the projective line.
//! - [`polytopes`]: exact rational convex hulls, Minkowski sums, volumes,
//!   mixed volumes.
//! - [`fourier_motzkin`]: exact rational linear feasibility.
//! - [`valued_series`]: p-adically valued power series, integration shape,
//!   tail truncation certificates, Newton polygons.
//! - [`bounds`]: residue-disk bound pipelines (quadratic, cubic, generic).
//! - [`family`]: the genus-indexed good-reduction family and its verifier.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod curves;
pub mod family;
pub mod finite_fields;
pub mod fourier_motzkin;
pub mod poly;
pub mod polytopes;
pub mod quadratic_field;
pub mod valued_series;

mod linalg;
mod modp;
mod primes;

pub use num_bigint::{BigInt, BigUint, Sign};
pub use num_rational::BigRational;

pub use primes::{is_prime, next_prime, primes_up_to};
