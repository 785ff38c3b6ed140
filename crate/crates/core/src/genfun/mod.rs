//! The numerator `h*_n(y) = (1-y)^((n-1)^2+1) sum_{t>=0} h_n(t) y^t` and its
//! shape properties: palindromic, positive, unimodal, strongly log-concave
//! and real-rooted.

mod sturm;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, IntegerForm, Rational, UniPoly};
use crate::reconstruct::HnResult;
use crate::{window_radius, Result};

pub use sturm::{count_real_roots, squarefree_decomposition, squarefree_part, sturm_real_rooted};

/// `floor((n-2)^2 / 2)`
pub fn nhat(n: u32) -> i64 {
    (i64::from(n) - 2).pow(2) / 2
}

/// A violated conjectured property, kept verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub property: String,
    pub n: u32,
    pub index: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFlags {
    pub palindromic: bool,
    pub positive_integral: bool,
    pub unimodal: bool,
    pub strongly_log_concave: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFunReport {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: i64,
    pub nhat: i64,
    /// Coefficients of `h*_n / y^N`.
    #[serde(with = "crate::serde_rational::rational_vec")]
    pub a: Vec<Rational>,
    pub support_ok: bool,
    pub flags: ShapeFlags,
    pub real_rooted: bool,
    pub real_root_count: usize,
    pub findings: Vec<Finding>,
}

impl GenFunReport {
    /// `h*_n(y)` as a polynomial in `y`.
    pub fn hstar_poly(&self) -> UniPoly {
        let mut c = vec![Rational::zero(); self.big_n as usize];
        c.extend(self.a.iter().cloned());
        UniPoly::new(c).with_var('y')
    }

    pub fn all_hold(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Coefficients `0..len` of `(1-y)^m sum_t h(t) y^t`, by the finite
/// binomial transform.
pub fn binomial_transform(h: &UniPoly, m: i64, len: usize) -> Vec<Rational> {
    let form = IntegerForm::new(h);
    let vals: Vec<BigInt> = (0..len as i64).map(|t| form.eval_numerator(t)).collect();
    let signed_binom: Vec<BigInt> = (0..=m)
        .map(|j| if j % 2 == 0 { binomial(m, j) } else { -binomial(m, j) })
        .collect();
    (0..len)
        .map(|i| {
            let num: BigInt = (0..=i.min(m as usize)).map(|j| &signed_binom[j] * &vals[i - j]).sum();
            Rational::new(num, form.denominator.clone())
        })
        .collect()
}

/// `sum_j c_j C(t - j + d, d)`: coefficient `t` of `sum_j c_j y^j / (1-y)^(d+1)`.
pub fn series_coefficient(c: &[Rational], d: i64, t: i64) -> Rational {
    c.iter()
        .enumerate()
        .filter(|(j, _)| (*j as i64) <= t)
        .map(|(j, cj)| cj * Rational::from_integer(binomial(t - j as i64 + d, d)))
        .sum()
}

pub fn shape_checks(a: &[Rational], m: usize) -> ShapeFlags {
    assert_eq!(a.len(), m + 1, "shape_checks needs m + 1 coefficients");
    let palindromic = (0..=m).all(|i| a[i] == a[m - i]);
    let positive_integral = a.iter().all(|x| x.is_integer() && x.is_positive());
    let peak = (0..m).find(|&i| a[i + 1] < a[i]).unwrap_or(m);
    let unimodal = (peak..m).all(|i| a[i + 1] <= a[i]);
    let b: Vec<Rational> = (0..=m)
        .map(|i| &a[i] / Rational::from_integer(binomial(m as i64, i as i64)))
        .collect();
    let strongly_log_concave = (1..m).all(|i| &b[i] * &b[i] >= &b[i - 1] * &b[i + 1]);
    ShapeFlags {
        palindromic,
        positive_integral,
        unimodal,
        strongly_log_concave,
    }
}

pub fn hstar(result: &HnResult) -> Result<GenFunReport> {
    let n = result.n;
    let big_n = window_radius(n);
    let nh = nhat(n);
    let m = (i64::from(n) - 1).pow(2) + 1;
    let len = (m + nh + big_n + 1) as usize;
    let coeffs = binomial_transform(&result.polynomial(), m, len);

    let mut findings = Vec::new();
    let mut finding = |property: &str, index: Option<usize>, detail: String| {
        findings.push(Finding {
            property: property.into(),
            n,
            index,
            detail,
        })
    };
    let top = (big_n + nh) as usize;
    let mut support_ok = true;
    for (i, c) in coeffs.iter().enumerate() {
        let inside = i >= big_n as usize && i <= top;
        if !inside && !c.is_zero() {
            support_ok = false;
            finding("support", Some(i), format!("coefficient of y^{i} is {c}"));
        }
    }
    let a: Vec<Rational> = coeffs[big_n as usize..=top].to_vec();
    if a[0].is_zero() || a[nh as usize].is_zero() {
        support_ok = false;
        finding("support", None, format!("support is not exactly [{big_n}, {top}]"));
    }

    let flags = shape_checks(&a, nh as usize);
    for (ok, name) in [
        (flags.palindromic, "palindromic"),
        (flags.unimodal, "unimodal"),
        (flags.strongly_log_concave, "strongly log-concave"),
    ] {
        if !ok {
            finding(name, None, format!("a = {a:?}"));
        }
    }
    if let Some(i) = a.iter().position(|x| !x.is_positive()) {
        finding("positive", Some(i), format!("a_{i} = {}", a[i]));
    } else if let Some(i) = a.iter().position(|x| !x.is_integer()) {
        finding("integral", Some(i), format!("a_{i} = {} is not an integer", a[i]));
    }

    let cofactor = UniPoly::new(a.clone());
    let (real_rooted, count) = sturm_real_rooted(&cofactor)?;
    // the y^N factor contributes the root 0 when N > 0
    let real_root_count = count + usize::from(big_n > 0);
    if !real_rooted {
        finding("real-rooted", None, format!("{count} distinct real roots"));
    }
    Ok(GenFunReport {
        n,
        big_n,
        nhat: nh,
        a,
        support_ok,
        flags,
        real_rooted,
        real_root_count,
        findings,
    })
}

/// `h*_n` for `n = 1, 2`, where `h_n(t) = 1` resp. `t + 1`.
pub fn trivial_hstar(n: u32) -> Option<UniPoly> {
    (n <= 2).then(|| UniPoly::one().with_var('y'))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::reconstruct::reconstruct;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn h5_numerator() {
        let r = hstar(&reconstruct(5).unwrap()).unwrap();
        assert_eq!(r.a, ints(&[9, 72, 138, 72, 9]));
        assert_eq!(r.real_root_count, 5);
        assert!(r.all_hold());
        assert_eq!(r.hstar_poly(), UniPoly::from_ints(&[0, 0, 0, 0, 9, 72, 138, 72, 9]));
    }

    #[test]
    fn small_numerators() {
        let r = hstar(&reconstruct(3).unwrap()).unwrap();
        assert_eq!(r.hstar_poly(), UniPoly::from_ints(&[0, 1]));
        let r = hstar(&reconstruct(2).unwrap()).unwrap();
        assert_eq!(r.hstar_poly(), UniPoly::from_ints(&[1]));
        assert_eq!(trivial_hstar(2), Some(UniPoly::one()));
    }

    #[test]
    fn shape_examples() {
        let f = shape_checks(&ints(&[9, 72, 138, 72, 9]), 4);
        assert!(f.palindromic && f.positive_integral && f.unimodal && f.strongly_log_concave);
        let f = shape_checks(&ints(&[1, 3, 1, 3, 1]), 4);
        assert!(f.palindromic && !f.unimodal);
        assert!(shape_checks(&ints(&[1, 4, 6, 4, 1]), 4).strongly_log_concave);
        assert!(!shape_checks(&ints(&[1, 0, 1]), 2).positive_integral);
    }

    #[test]
    fn transform_round_trip() {
        for n in 3..=6 {
            let res = reconstruct(n).unwrap();
            let rep = hstar(&res).unwrap();
            let h = res.polynomial();
            let c = rep.hstar_poly().into_coeffs();
            let d = (i64::from(n) - 1).pow(2);
            for t in 0..=rep.big_n + rep.nhat + 5 {
                assert_eq!(series_coefficient(&c, d, t), h.eval_int(t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn broken_input_is_a_finding() {
        let mut res = reconstruct(4).unwrap();
        res.p = res.p.scale(&int(2)) + UniPoly::from_ints(&[0, 1]);
        let rep = hstar(&res).unwrap();
        assert!(!rep.all_hold());
    }
}
