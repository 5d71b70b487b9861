//! Exact arithmetic: big rationals, polynomials and rational functions in the
//! dimension variable `d`, and exact linear algebra over `Q`.

mod format;
mod funcmatrix;
mod matrix;
mod poly;
mod ratfunc;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

pub use format::{format_rational, parse_rational};
pub use funcmatrix::RatFuncMatrix;
pub use matrix::{RatMatrix, Solution};
pub use poly::{factor_integer_roots, IntegerRoots, PolyQ};
pub use ratfunc::RatFuncQ;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n!!`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= BigUint::from(k);
        k -= 2;
    }
    acc
}

/// Catalan number `c_k = (2k)! / ((k+1)! k!)`.
pub fn catalan(k: usize) -> BigUint {
    factorial(2 * k) / (factorial(k + 1) * factorial(k))
}

/// `(2n-1)!! = (2n)! / (2^n n!)`, the number of pair partitions of `2n` points.
pub fn pairing_count(n: usize) -> BigUint {
    if n == 0 {
        BigUint::one()
    } else {
        double_factorial(2 * n - 1)
    }
}

/// `2^n n! / (2n)! = 1 / (2n-1)!!`, the prefactor of the orthogonal
/// Weingarten formula.
pub fn pairing_weight(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(pairing_count(n)))
}

pub(crate) fn big(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}
