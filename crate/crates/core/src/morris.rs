//! The Morris constant term
//!
//! ```text
//! CT  1 / ( prod x_i^(k1-1) prod (1-x_i)^k2 prod_{i<j} (x_i-x_j)^k3 )
//! ```
//!
//! evaluated through its closed Γ-product over `j = 0..n-1`. All Γ arguments
//! are half-integers, so the whole product is tracked as a [`GammaValue`]
//! and the powers of sqrt(pi) must cancel exactly.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{half_gamma, GammaValue, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorrisParams {
    pub n: u32,
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
}

impl MorrisParams {
    pub fn new(n: u32, k1: u32, k2: u32, k3: u32) -> Self {
        MorrisParams { n, k1, k2, k3 }
    }
}

/// Exact value of the Morris constant term.
///
/// `n = 0` is 1 by convention. For `n >= 1` the hypothesis `k1 + k2 >= 2`
/// is required, and every Γ argument must be positive (this rules out
/// `k1 = 0` or `k2 = 0`, whose `j = 0` factor is Γ(0)).
pub fn ct_morris(p: MorrisParams) -> Result<BigInt> {
    let MorrisParams { n, k1, k2, k3 } = p;
    if n == 0 {
        return Ok(BigInt::one());
    }
    if k1 + k2 < 2 {
        return Err(Error::Hypothesis(format!(
            "k1 + k2 >= 2 is required, got k1 = {k1}, k2 = {k2}"
        )));
    }
    let (n, k1, k2, k3) = (i64::from(n), i64::from(k1), i64::from(k2), i64::from(k3));
    let mut acc = GammaValue::one();
    // every argument is passed doubled so half-integers stay integral
    for j in 0..n {
        let num = half_gamma(2 + k3)? * half_gamma(2 * (k1 + k2 - 1) + (n + j - 1) * k3)?;
        let den = half_gamma(2 + (j + 1) * k3)?
            * half_gamma(2 * k1 + j * k3)?
            * half_gamma(2 * k2 + j * k3)?;
        acc = acc * num / den;
    }
    let value: Rational = acc.into_rational()?;
    if !value.is_integer() {
        return Err(Error::Consistency(format!(
            "Morris product {value} for {p:?} is not an integer"
        )));
    }
    Ok(value.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;

    fn m(n: u32, k1: u32, k2: u32, k3: u32) -> BigInt {
        ct_morris(MorrisParams::new(n, k1, k2, k3)).unwrap()
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(m(0, 5, 7, 3), BigInt::one());
        assert_eq!(m(0, 0, 0, 0), BigInt::one());
    }

    #[test]
    fn single_variable_is_binomial() {
        // CT x^(1-k1) (1-x)^(-k2) = C(k1+k2-2, k1-1)
        for k1 in 1..6u32 {
            for k2 in 1..6u32 {
                if k1 + k2 < 2 {
                    continue;
                }
                let expected = binomial(i64::from(k1 + k2 - 2), i64::from(k1 - 1));
                for k3 in 0..4 {
                    assert_eq!(m(1, k1, k2, k3), expected);
                }
            }
        }
        assert_eq!(m(1, 2, 3, 5), BigInt::from(3));
    }

    #[test]
    fn known_values() {
        assert_eq!(m(2, 2, 1, 2), BigInt::from(3));
        assert_eq!(m(3, 1, 1, 2), BigInt::from(6));
        // k3 = 0 factorizes into independent one-variable terms
        assert_eq!(m(3, 2, 3, 0), BigInt::from(27));
    }

    #[test]
    fn hypothesis_and_domain_errors() {
        assert!(matches!(ct_morris(MorrisParams::new(2, 1, 0, 2)), Err(Error::Hypothesis(_))));
        assert!(matches!(ct_morris(MorrisParams::new(2, 0, 3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn odd_k3_cancels_sqrt_pi() {
        for n in 1..6 {
            for k1 in 1..4 {
                for k2 in 1..4 {
                    if k1 + k2 >= 2 {
                        assert!(m(n, k1, k2, 1) >= BigInt::one());
                        assert!(m(n, k1, k2, 3) >= BigInt::one());
                    }
                }
            }
        }
    }

    #[test]
    fn shift_and_swap_identities() {
        for n in 1..=6 {
            for k1 in 1..=4 {
                for k3 in 1..=4 {
                    assert_eq!(m(n + 1, k1, 1, k3), m(n, k1, k3 + 1, k3), "n={n} k1={k1} k3={k3}");
                    for k2 in 1..=4 {
                        if k1 + k2 >= 2 {
                            assert_eq!(m(n, k1, k2, k3), m(n, k2, k1, k3));
                        }
                    }
                }
            }
        }
    }
}
