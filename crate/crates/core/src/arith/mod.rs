//! Exact arithmetic: rationals, dense univariate polynomials and Γ at
//! half-integers.
//!
//! Every value in this crate is exact. Rationals are always kept in lowest
//! terms with a positive denominator.

mod gamma;
mod poly;

pub use gamma::{half_gamma, GammaValue};
pub use poly::{IntegerForm, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Checked division; a zero divisor is an error instead of a panic.
pub fn checked_div(a: &Rational, b: &Rational) -> crate::Result<Rational> {
    if b.is_zero() {
        return Err(crate::Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient C(n, k) for integer `n` (possibly negative) and
/// `k >= 0`. Returns 0 for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Multinomial coefficient n! / (m_1! ... m_k!).
pub fn multinomial(parts: &[u32]) -> BigInt {
    let n: u64 = parts.iter().map(|&m| u64::from(m)).sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &m| acc / factorial(u64::from(m)))
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the absolute values (0 for an empty or all-zero list).
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
        .abs()
}

/// True when `r` is in canonical form (coprime, positive denominator).
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
