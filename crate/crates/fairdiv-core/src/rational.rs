//! Exact rational numbers.
//!
//! Utilities, welfare values, and split fractions are all arbitrary-precision
//! rationals kept in lowest terms with a positive denominator. No operation
//! in this crate ever rounds.

use num_bigint::BigInt;

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator). `Display` prints `p` for integers and `p/q` otherwise.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
