use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{gcd_all, int, lcm_denominators, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[k]` is the coefficient of `var^k`. The highest stored
/// coefficient is never zero; the zero polynomial has no coefficients.
/// The variable name only affects printing and is ignored by equality.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: char,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl Default for UniPoly {
    fn default() -> Self {
        UniPoly::zero()
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var: 't' }
    }

    /// Coefficients given lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::new(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        UniPoly::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs)
    }

    /// `t - root`
    pub fn linear(root: i64) -> Self {
        UniPoly::from_ints(&[-root, 1])
    }

    /// Product of `(t - r)` over the given roots.
    pub fn from_roots<I: IntoIterator<Item = i64>>(roots: I) -> Self {
        let mut p = UniPoly::one();
        for r in roots {
            p.mul_linear_in_place(&int(r));
        }
        p
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        IntegerForm::new(self).eval(x)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero().with_var(self.var);
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            var: self.var,
        }
    }

    /// In-place multiplication by `(t - root)`.
    pub fn mul_linear_in_place(&mut self, root: &Rational) {
        if self.is_zero() {
            return;
        }
        self.coeffs.push(Rational::zero());
        for k in (0..self.coeffs.len()).rev() {
            let lower = if k > 0 {
                self.coeffs[k - 1].clone()
            } else {
                Rational::zero()
            };
            let cur = std::mem::take(&mut self.coeffs[k]);
            self.coeffs[k] = lower - cur * root;
        }
    }

    /// `p(a*t + b)`
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UniPoly {
        let inner = UniPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &inner + UniPoly::constant(c.clone());
        }
        acc.with_var(self.var)
    }

    /// Substitution `t <- t - i`, i.e. returns `q` with `q(t) = p(t - i)`.
    pub fn shift(&self, i: i64) -> UniPoly {
        self.compose_linear(&Rational::one(), &int(-i))
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        UniPoly::new(coeffs).with_var(self.var)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one().with_var(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero().with_var(self.var), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((
            UniPoly::new(quot).with_var(self.var),
            UniPoly::new(rem).with_var(self.var),
        ))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Consistency(format!(
                "division by {divisor} leaves remainder {r}"
            )));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Splits `p = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = gcd_all(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// The primitive integer associate of `p` as a rational polynomial.
    pub fn primitive(&self) -> UniPoly {
        let (_, prim) = self.content_and_primitive();
        UniPoly::new(prim.into_iter().map(Rational::from_integer).collect()).with_var(self.var)
    }

    /// Integer roots with multiplicities, in increasing order.
    ///
    /// Candidates are bounded both by the Fujiwara root bound and by the
    /// trailing nonzero coefficient of the primitive integer associate.
    pub fn integer_roots(&self) -> Vec<(BigInt, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let (_, mut prim) = self.content_and_primitive();
        let zero_mult = prim.iter().take_while(|c| c.is_zero()).count();
        prim.drain(..zero_mult);
        if zero_mult > 0 {
            out.push((BigInt::zero(), zero_mult));
        }
        if prim.len() > 1 {
            let bound = fujiwara_bound(&prim).min(prim[0].abs());
            let bound = bound.to_i64().expect("integer root search range too large");
            for r in (-bound..=bound).filter(|&r| r != 0) {
                if !(&prim[0] % BigInt::from(r)).is_zero() {
                    continue;
                }
                let mut mult = 0;
                while prim.len() > 1 && eval_int_coeffs(&prim, r).is_zero() {
                    prim = synthetic_div(&prim, r);
                    mult += 1;
                }
                if mult > 0 {
                    out.push((BigInt::from(r), mult));
                }
            }
        }
        out.sort();
        out
    }

    /// Unique polynomial of degree `< points.len()` through all points
    /// (Newton divided differences).
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly> {
        let mut seen = HashSet::new();
        for (x, _) in points {
            if !seen.insert(x.clone()) {
                return Err(Error::DuplicateAbscissa(x.to_string()));
            }
        }
        let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
        let mut c: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        let k = c.len();
        for j in 1..k {
            for i in (j..k).rev() {
                c[i] = (&c[i] - &c[i - 1]) / (xs[i] - xs[i - j]);
            }
        }
        let mut p = match c.last() {
            Some(top) => UniPoly::constant(top.clone()),
            None => return Ok(UniPoly::zero()),
        };
        for i in (0..k - 1).rev() {
            p.mul_linear_in_place(xs[i]);
            if p.coeffs.is_empty() {
                p.coeffs.push(Rational::zero());
            }
            p.coeffs[0] += &c[i];
            p = UniPoly::new(p.coeffs);
        }
        Ok(p)
    }

    /// Formats with an explicit variable name, descending powers,
    /// e.g. `3*t^3 - 17*t^2 + 19*t - 3`.
    pub fn to_string_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{mag}*{var_part}"));
            }
        }
        out
    }
}

/// `p = numerators / denominator` with integer numerators; evaluates
/// without intermediate rational normalization.
#[derive(Clone, Debug)]
pub struct IntegerForm {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl IntegerForm {
    pub fn new(p: &UniPoly) -> Self {
        let denominator = lcm_denominators(&p.coeffs);
        let numerators = p
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denominator / c.denom()))
            .collect();
        IntegerForm {
            numerators,
            denominator,
        }
    }

    /// `p(x) * denominator`
    pub fn eval_numerator(&self, x: i64) -> BigInt {
        eval_int_coeffs(&self.numerators, x)
    }

    pub fn eval(&self, x: i64) -> Rational {
        Rational::new(self.eval_numerator(x), self.denominator.clone())
    }
}

fn fujiwara_bound(prim: &[BigInt]) -> BigInt {
    // 2 * max_k |a_{d-k} / a_d|^(1/k), rounded up.
    let d = prim.len() - 1;
    let lead = prim[d].abs();
    let mut best = BigInt::one();
    for k in 1..=d {
        let a = prim[d - k].abs();
        if a.is_zero() {
            continue;
        }
        let ratio = a.div_ceil(&lead);
        let mut root = ratio.nth_root(k as u32);
        if root.pow(k as u32) < ratio {
            root += 1;
        }
        best = best.max(root);
    }
    best * 2 + 1
}

fn eval_int_coeffs(coeffs: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

fn synthetic_div(coeffs: &[BigInt], r: i64) -> Vec<BigInt> {
    let d = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for k in (0..d).rev() {
        carry = &coeffs[k + 1] + carry * r;
        out[k] = carry.clone();
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(self.var))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(coeffs).with_var(self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero().with_var(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs).with_var(self.var)
    }
}

impl Mul<&Rational> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &Rational) -> UniPoly {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, is_canonical};
    use proptest::prelude::*;

    #[test]
    fn shift_examples() {
        assert_eq!(UniPoly::x().shift(1), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(
            UniPoly::from_ints(&[0, 0, 1]).shift(-2),
            UniPoly::from_ints(&[4, 4, 1])
        );
        assert_eq!(UniPoly::from_ints(&[7]).shift(13), UniPoly::from_ints(&[7]));
    }

    #[test]
    fn interpolate_examples() {
        let pts = |v: &[(i64, i64)]| -> Vec<(Rational, Rational)> {
            v.iter().map(|&(x, y)| (int(x), int(y))).collect()
        };
        assert_eq!(
            UniPoly::interpolate(&pts(&[(0, 1), (1, 2)])).unwrap(),
            UniPoly::from_ints(&[1, 1])
        );
        assert_eq!(
            UniPoly::interpolate(&pts(&[(0, 0), (1, 1), (2, 4)])).unwrap(),
            UniPoly::from_ints(&[0, 0, 1])
        );
        assert!(matches!(
            UniPoly::interpolate(&pts(&[(0, 0), (0, 1)])),
            Err(Error::DuplicateAbscissa(_))
        ));
        assert!(UniPoly::interpolate(&[]).unwrap().is_zero());
    }

    #[test]
    fn interpolate_h4_from_ten_values() {
        // h_4(t) = (t-1) t^2 (t+1)(t+2)(t+3)(t+4)^2 (t+5) / 60480
        let h4 = UniPoly::from_roots([1, 0, 0, -1, -2, -3, -4, -4, -5]).scale(&frac(1, 60480));
        let pts: Vec<_> = (0..10).map(|t| (int(t), h4.eval_int(t))).collect();
        assert_eq!(h4.eval_int(2), int(1));
        assert_eq!(UniPoly::interpolate(&pts).unwrap(), h4);
    }

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_roots([1, 2, 2, 5]);
        let b = UniPoly::from_roots([2, 7]);
        assert_eq!(a.gcd(&b), UniPoly::linear(2));
        let (q, r) = a.div_rem(&UniPoly::from_roots([2, 2])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_roots([1, 5]));
        assert!(UniPoly::linear(3).exact_div(&UniPoly::linear(1)).is_err());
        assert_eq!(a.div_rem(&UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn integer_roots_with_multiplicity() {
        let p = UniPoly::from_roots([0, 0, 3, -4, -4, 55]).scale(&frac(-7, 3))
            * UniPoly::from_ints(&[2, 25, 5]);
        let roots: Vec<(i64, usize)> = p
            .integer_roots()
            .into_iter()
            .map(|(r, m)| (r.to_i64().unwrap(), m))
            .collect();
        assert_eq!(roots, vec![(-4, 2), (0, 2), (3, 1), (55, 1)]);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[-3, 19, -17, 3]).to_string(), "3*t^3 - 17*t^2 + 19*t - 3");
        assert_eq!(UniPoly::new(vec![frac(1, 2), int(-1)]).to_string(), "-t + 1/2");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| frac(n, d))
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in arb_rational(), b in arb_rational()) {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(is_canonical(&r));
            }
            if !b.is_zero() {
                prop_assert!(is_canonical(&(&a / &b)));
            }
        }

        #[test]
        fn interpolation_round_trip(p in arb_poly(12)) {
            let k = p.degree().map_or(1, |d| d + 1);
            let pts: Vec<_> = (0..k as i64).map(|t| (int(t * 3 - 7), p.eval_int(t * 3 - 7))).collect();
            prop_assert_eq!(UniPoly::interpolate(&pts).unwrap(), p);
        }

        #[test]
        fn shift_composes(p in arb_poly(8), i in -20i64..20, j in -20i64..20) {
            prop_assert_eq!(p.shift(i).shift(j), p.shift(i + j));
            if let Some(d) = p.degree() {
                prop_assert_eq!(p.shift(i).degree(), Some(d));
            }
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(8), b in arb_poly(4)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree() || r.is_zero());
        }
    }
}
