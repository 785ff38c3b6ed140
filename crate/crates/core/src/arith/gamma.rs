use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, Rational};
use crate::{Error, Result};

/// An exact number of the form `value * sqrt(pi)^sqrt_pi_exponent`.
///
/// A single Γ value at a half-integer has exponent 0 or 1. Products and
/// quotients add and subtract exponents, so intermediate values may carry
/// any integer exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaValue {
    pub value: Rational,
    pub sqrt_pi_exponent: i32,
}

impl GammaValue {
    pub fn one() -> Self {
        GammaValue {
            value: Rational::one(),
            sqrt_pi_exponent: 0,
        }
    }

    /// The rational part, provided all powers of sqrt(pi) have cancelled.
    pub fn into_rational(self) -> Result<Rational> {
        if self.sqrt_pi_exponent != 0 {
            return Err(Error::Consistency(format!(
                "sqrt(pi) exponent {} did not cancel",
                self.sqrt_pi_exponent
            )));
        }
        Ok(self.value)
    }
}

impl Mul for GammaValue {
    type Output = GammaValue;
    fn mul(self, rhs: GammaValue) -> GammaValue {
        GammaValue {
            value: self.value * rhs.value,
            sqrt_pi_exponent: self.sqrt_pi_exponent + rhs.sqrt_pi_exponent,
        }
    }
}

impl Div for GammaValue {
    type Output = GammaValue;
    fn div(self, rhs: GammaValue) -> GammaValue {
        assert!(!rhs.value.is_zero(), "division by a zero Γ value");
        GammaValue {
            value: self.value / rhs.value,
            sqrt_pi_exponent: self.sqrt_pi_exponent - rhs.sqrt_pi_exponent,
        }
    }
}

/// Γ(two_a / 2) for a positive integer `two_a`.
///
/// Even arguments give (a-1)!; odd arguments 2k+1 give
/// Γ(k + 1/2) = (2k)! / (4^k k!) · sqrt(pi).
pub fn half_gamma(two_a: i64) -> Result<GammaValue> {
    if two_a <= 0 {
        return Err(Error::Domain(format!(
            "Γ({two_a}/2) is undefined for nonpositive arguments"
        )));
    }
    let two_a = two_a as u64;
    if two_a.is_multiple_of(2) {
        Ok(GammaValue {
            value: Rational::from_integer(factorial(two_a / 2 - 1)),
            sqrt_pi_exponent: 0,
        })
    } else {
        let k = (two_a - 1) / 2;
        let num = factorial(2 * k);
        let den = BigInt::from(4u8).pow(k as u32) * factorial(k);
        Ok(GammaValue {
            value: Rational::new(num, den),
            sqrt_pi_exponent: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    #[test]
    fn small_values() {
        assert_eq!(half_gamma(2).unwrap(), GammaValue { value: int(1), sqrt_pi_exponent: 0 });
        assert_eq!(half_gamma(3).unwrap(), GammaValue { value: frac(1, 2), sqrt_pi_exponent: 1 });
        assert_eq!(half_gamma(8).unwrap(), GammaValue { value: int(6), sqrt_pi_exponent: 0 });
        assert_eq!(half_gamma(1).unwrap(), GammaValue { value: int(1), sqrt_pi_exponent: 1 });
    }

    #[test]
    fn nonpositive_is_domain_error() {
        assert!(matches!(half_gamma(0), Err(Error::Domain(_))));
        assert!(matches!(half_gamma(-3), Err(Error::Domain(_))));
    }

    #[test]
    fn recurrence() {
        for two_a in 1..=60 {
            let lhs = half_gamma(two_a + 2).unwrap();
            let rhs = half_gamma(two_a).unwrap();
            assert_eq!(lhs.sqrt_pi_exponent, rhs.sqrt_pi_exponent);
            assert_eq!(lhs.value, rhs.value * frac(two_a, 2));
        }
    }
}
