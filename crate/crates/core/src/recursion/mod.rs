//! Linear recursions for `d_n(0, t)` and `h_n(t)`.
//!
//! The five-term relations `E_ell` between the residues `d_n(ell, .)` are
//! shifted in `t` and combined with undetermined polynomial multipliers
//! `a_{ell,i}` until every `d_n(ell >= 1, .)` term cancels. What remains is
//! an `n`-term recursion in `d_n(0, .)`, which becomes one for `h_n` after
//! the shift `t -> t + n - 1`.

mod detc;
mod system;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{frac, gcd_all, int, lcm_denominators, Rational, UniPoly};
use crate::{Error, Result};

pub use detc::{check_detc, conjectured_det_c, det_c, largest_integer_root};
pub use system::{eliminate, ConstraintSystem, Elimination, Unknown};

/// `d_n(ell, t - shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TermKey {
    pub ell: i64,
    pub shift: i64,
}

impl TermKey {
    pub fn new(ell: i64, shift: i64) -> Self {
        TermKey { ell, shift }
    }
}

/// A relation `sum coeff * d_n(key) = 0`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquationRow {
    coefficients: BTreeMap<TermKey, UniPoly>,
}

impl EquationRow {
    pub fn new() -> Self {
        EquationRow::default()
    }

    pub fn coefficients(&self) -> &BTreeMap<TermKey, UniPoly> {
        &self.coefficients
    }

    pub fn coefficient(&self, key: TermKey) -> UniPoly {
        self.coefficients.get(&key).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, key: TermKey, p: &UniPoly) {
        let sum = &self.coefficient(key) + p;
        if sum.is_zero() {
            self.coefficients.remove(&key);
        } else {
            self.coefficients.insert(key, sum);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &EquationRow, factor: &UniPoly) {
        for (&k, p) in &other.coefficients {
            self.add(k, &(p * factor));
        }
    }

    /// The row with `t` replaced by `t - i`.
    pub fn shifted(&self, i: i64) -> EquationRow {
        EquationRow {
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, p)| (TermKey::new(k.ell, k.shift + i), p.shift(i)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for EquationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 = 0");
        }
        // highest ell first, as the relations are usually written
        let mut terms: Vec<_> = self.coefficients.iter().collect();
        terms.sort_by(|a, b| b.0.ell.cmp(&a.0.ell).then(a.0.shift.cmp(&b.0.shift)));
        for (i, (k, p)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let arg = if k.shift == 0 {
                "t".to_string()
            } else {
                format!("t-{}", k.shift)
            };
            write!(f, "({p})*d({}, {arg})", k.ell)?;
        }
        write!(f, " = 0")
    }
}

/// The five-term relation between the residues `D_n(ell, ., k1, k2, k3)`.
///
/// Terms with `ell` outside `0..=n-2` are dropped: `D_n` vanishes for
/// negative `ell` and `ell >= n`, and `d_n(n-1, t) = 0` in the
/// specialization used for the recursion (checked against the oracle).
pub fn dn_relation(n: u32, ell: i64, k1: u32, k2: u32, k3: u32) -> Result<EquationRow> {
    if n < 2 {
        return Err(Error::invalid("n", format!("n >= 2 required, got {n}")));
    }
    let ni = i64::from(n);
    if ell < 0 || ell > ni - 2 {
        return Err(Error::invalid("ell", format!("0 <= ell <= {} required, got {ell}", ni - 2)));
    }
    let (k1, k2) = (int(i64::from(k1)), int(i64::from(k2)));
    let half_k3 = frac(i64::from(k3), 2);
    let l = ell;
    let r = |x: i64| int(x);

    let inner = |c: i64, w: i64| &k2 - &k1 + r(c) + &half_k3 * r(w);
    let a_up = r(l + 1) * inner(-3, 2 * ni - 2 - l);
    let a_same = r(l + 1) * inner(-2, 2 * ni - 2 - l) - r(ni - l) * (&k2 - r(2) + &half_k3 * r(ni - 1 - l));
    let a_bar = -(r(1) + r(l + 1) * inner(-2, 2 * ni - 2 - l));
    let a_down = -(r(ni - l) * (&k2 - r(1) + &half_k3 * r(ni - 1 - l)));

    let t_minus = |c: i64| UniPoly::new(vec![r(-c), Rational::one()]);
    let mut row = EquationRow::new();
    let mut push = |key: TermKey, p: UniPoly| {
        if (0..=ni - 2).contains(&key.ell) {
            row.add(key, &p);
        }
    };
    push(TermKey::new(l + 1, 0), UniPoly::constant(a_up));
    push(TermKey::new(l, 0), &t_minus(ni) + &UniPoly::constant(a_same));
    push(TermKey::new(l, 1), &-t_minus(ni) + &UniPoly::constant(a_bar));
    push(TermKey::new(l - 1, 0), UniPoly::constant(a_down.clone()));
    push(TermKey::new(l - 1, 1), UniPoly::constant(-a_down));
    Ok(row)
}

/// Which sequence a [`Recursion`] annihilates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecursionForm {
    /// `sum c_i(t) d_n(0, t - i) = 0`
    DForm,
    /// `sum c_i(t) h_n(t - i) = 0`
    HForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recursion {
    pub n: u32,
    #[serde(with = "crate::serde_rational::poly_vec")]
    pub c: Vec<UniPoly>,
    pub form: RecursionForm,
}

impl Recursion {
    /// Builds a recursion with integer coefficients of content 1 and a
    /// positive leading coefficient in `c_0`.
    pub fn normalized(n: u32, c: Vec<UniPoly>, form: RecursionForm) -> Result<Self> {
        let c = normalize(c)?;
        Ok(Recursion { n, c, form })
    }

    /// `sum_i c_i(t) f(t - i)` at an integer `t`.
    pub fn apply(&self, t: i64, f: impl Fn(i64) -> Rational) -> Rational {
        self.c
            .iter()
            .enumerate()
            .map(|(i, ci)| ci.eval_int(t) * f(t - i as i64))
            .sum()
    }

    /// `sum_i c_i(t) p(t - i)` as a polynomial.
    pub fn apply_poly(&self, p: &UniPoly) -> UniPoly {
        self.c
            .iter()
            .enumerate()
            .fold(UniPoly::zero(), |acc, (i, ci)| &acc + &(ci * &p.shift(i as i64)))
    }
}

impl fmt::Display for Recursion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.form {
            RecursionForm::DForm => format!("d_{}(0, ", self.n),
            RecursionForm::HForm => format!("h_{}(", self.n),
        };
        for (i, ci) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let arg = if i == 0 { "t".to_string() } else { format!("t-{i}") };
            write!(f, "({ci})*{name}{arg})")?;
        }
        write!(f, " = 0")
    }
}

fn normalize(c: Vec<UniPoly>) -> Result<Vec<UniPoly>> {
    let lead = match c.first().and_then(|c0| c0.leading()) {
        Some(l) => l.clone(),
        None => return Err(Error::Structural("c_0 vanishes identically".into())),
    };
    let den = lcm_denominators(c.iter().flat_map(|p| p.coeffs()));
    let den = Rational::from_integer(den);
    let scaled: Vec<UniPoly> = c.iter().map(|p| p.scale(&den)).collect();
    let nums: Vec<BigInt> = scaled.iter().flat_map(|p| p.coeffs().iter().map(|x| x.to_integer())).collect();
    let mut g = gcd_all(&nums);
    if lead.is_negative() {
        g = -g;
    }
    if g.is_zero() {
        return Err(Error::Structural("recursion coefficients vanish".into()));
    }
    let g = Rational::one() / Rational::from_integer(g);
    Ok(scaled.iter().map(|p| p.scale(&g)).collect())
}

/// The recursion `sum_{i<n} c_i(t) d_n(0, t-i) = 0`.
pub fn dn_recursion(n: u32) -> Result<Recursion> {
    Ok(eliminate(n)?.recursion)
}

/// The recursion `sum_{i<n} c_i(t) h_n(t-i) = 0`, obtained from the
/// `d_n(0, .)` recursion through `h_n(t) = d_n(0, t + n - 1)`.
pub fn hn_recursion(n: u32) -> Result<Recursion> {
    let d = dn_recursion(n)?;
    let s = -(i64::from(n) - 1);
    Recursion::normalized(n, d.c.iter().map(|p| p.shift(s)).collect(), RecursionForm::HForm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dn_point, DEFAULT_MAX_NODES};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn roots(rs: &[i64]) -> UniPoly {
        UniPoly::from_roots(rs.iter().copied())
    }

    #[test]
    fn n4_relations() {
        let e0 = dn_relation(4, 0, 2, 1, 2).unwrap();
        assert_eq!(e0.coefficient(TermKey::new(1, 0)), p(&[2]));
        assert_eq!(e0.coefficient(TermKey::new(0, 0)), p(&[-9, 1]));
        assert_eq!(e0.coefficient(TermKey::new(0, 1)), p(&[0, -1]));
        assert_eq!(e0.coefficients().len(), 3);

        let e1 = dn_relation(4, 1, 2, 1, 2).unwrap();
        assert_eq!(e1.coefficient(TermKey::new(2, 0)), p(&[2]));
        assert_eq!(e1.coefficient(TermKey::new(1, 0)), p(&[-3, 1]));
        assert_eq!(e1.coefficient(TermKey::new(1, 1)), p(&[-1, -1]));
        assert_eq!(e1.coefficient(TermKey::new(0, 0)), p(&[-6]));
        assert_eq!(e1.coefficient(TermKey::new(0, 1)), p(&[6]));

        let e2 = dn_relation(4, 2, 2, 1, 2).unwrap();
        assert_eq!(e2.coefficient(TermKey::new(2, 0)), p(&[-1, 1]));
        assert_eq!(e2.coefficient(TermKey::new(2, 1)), p(&[0, -1]));
        assert_eq!(e2.coefficient(TermKey::new(1, 0)), p(&[-2]));
        assert_eq!(e2.coefficient(TermKey::new(1, 1)), p(&[2]));
        assert_eq!(e2.coefficients().len(), 4);
    }

    #[test]
    fn specialized_relation_closed_form() {
        // (l+1)(n-2-l) d(l+1,t) + (t - (n-2l)(n-2-l) - 1) d(l,t) - (t + l(n-2-l)) d(l,t-1)
        //   - (n-l)(n-1-l) d(l-1,t) + (n-l)(n-1-l) d(l-1,t-1) = 0
        for n in 3..=9u32 {
            let ni = i64::from(n);
            for l in 0..=ni - 2 {
                let row = dn_relation(n, l, n - 2, 1, 2).unwrap();
                let mut expected = EquationRow::new();
                let mut put = |k: TermKey, q: UniPoly| {
                    if (0..=ni - 2).contains(&k.ell) {
                        expected.add(k, &q);
                    }
                };
                put(TermKey::new(l + 1, 0), p(&[(l + 1) * (ni - 2 - l)]));
                put(TermKey::new(l, 0), p(&[-(ni - 2 * l) * (ni - 2 - l) - 1, 1]));
                put(TermKey::new(l, 1), p(&[-l * (ni - 2 - l), -1]));
                put(TermKey::new(l - 1, 0), p(&[-(ni - l) * (ni - 1 - l)]));
                put(TermKey::new(l - 1, 1), p(&[(ni - l) * (ni - 1 - l)]));
                assert_eq!(row, expected, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn relation_holds_on_oracle_values() {
        let cap = DEFAULT_MAX_NODES;
        for (n, k) in [(3u32, (1u32, 1u32, 2u32)), (3, (2, 2, 1)), (4, (2, 1, 2)), (4, (1, 2, 1))] {
            // the dropped d(n-1, .) term only vanishes in the (n-2, 1, 2) case
            let top = if k == (n - 2, 1, 2) { i64::from(n) - 2 } else { i64::from(n) - 3 };
            for l in 0..=top {
                let row = dn_relation(n, l, k.0, k.1, k.2).unwrap();
                for t in 3..=5i64 {
                    let s: Rational = row
                        .coefficients()
                        .iter()
                        .map(|(key, c)| {
                            c.eval_int(t) * dn_point(n, key.ell, t - key.shift, k.0, k.1, k.2, cap).unwrap()
                        })
                        .sum();
                    assert!(s.is_zero(), "n={n} l={l} t={t} k={k:?}");
                }
            }
        }
    }

    #[test]
    fn relation_rejects_bad_ell() {
        assert!(dn_relation(4, 3, 2, 1, 2).is_err());
        assert!(dn_relation(4, -1, 2, 1, 2).is_err());
    }

    #[test]
    fn n4_dform() {
        let r = dn_recursion(4).unwrap();
        assert_eq!(r.c[0], roots(&[3, 5, 5]));
        assert_eq!(r.c[1], p(&[42, -74, 28, -3]));
        assert_eq!(r.c[2], p(&[-3, 19, -17, 3]));
        assert_eq!(r.c[3], -roots(&[0, 0, 2]));
    }

    #[test]
    fn n4_hform() {
        let r = hn_recursion(4).unwrap();
        assert_eq!(r.form, RecursionForm::HForm);
        assert_eq!(r.c[0], roots(&[0, 2, 2]));
        assert_eq!(r.c[1], p(&[-9, 13, 1, -3]));
        assert_eq!(r.c[2], p(&[-18, -2, 10, 3]));
        // the d-form coefficient -t^2 (t-2) taken at t + 3
        assert_eq!(r.c[3], -roots(&[-1, -3, -3]));
    }

    #[test]
    fn n5_hform() {
        let r = hn_recursion(5).unwrap();
        assert_eq!(r.c[0], roots(&[0, 4, 3, 3]));
        assert_eq!(r.c[1], -p(&[-80, 126, -22, -16, 4]));
        assert_eq!(r.c[2], p(&[208, -80, -74, 12, 6]));
        assert_eq!(r.c[3], -p(&[-208, -106, 50, 32, 4]));
        assert_eq!(r.c[4], roots(&[-4, -4, -5, -1]));
    }

    #[test]
    fn h4_is_annihilated() {
        let h4 = roots(&[1, 0, 0, -1, -2, -3, -4, -4, -5]).scale(&frac(1, 60480));
        assert!(hn_recursion(4).unwrap().apply_poly(&h4).is_zero());
    }

    #[test]
    fn dform_annihilates_oracle_values() {
        for n in 3..=5u32 {
            let r = dn_recursion(n).unwrap();
            let ni = i64::from(n);
            for t0 in ni + 2..ni + 7 {
                let s = r.apply(t0, |t| dn_point(n, 0, t, n - 2, 1, 2, DEFAULT_MAX_NODES).unwrap());
                assert!(s.is_zero(), "n={n} t0={t0}");
            }
        }
    }

    #[test]
    fn recursion_serde_round_trip() {
        let r = hn_recursion(4).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: Recursion = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
