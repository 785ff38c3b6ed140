//! Brute-force constant-term extraction.
//!
//! A [`CtProblem`] is a Laurent polynomial numerator times a product of
//! geometric factors `(1 - x^b)^(-m)`, expanded under the ordering
//! `1 > x_1 > x_2 > ... > x_n > 0`. The chain substitution
//! `x_i = y_1 y_2 ... y_i` turns every factor that is small under that
//! ordering into a genuine power series in `y`, after which the constant
//! term is a finite sum over nonnegative factor exponents.
//!
//! This module is the ground truth for everything the recursion pipeline
//! produces, so it shares no code with it beyond rational arithmetic.

mod magic;
mod problems;

pub use magic::count_magic_squares;
pub use problems::{
    assemble_hn, bar_h_problem, ct_weak_composition, dn_point, dn_problem, hn_point,
    weak_composition_problem, weak_compositions,
};

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, lcm_denominators, Rational};
use crate::{Error, Result};

/// Default cap on the number of search nodes visited by [`ct_extract`].
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMonomial {
    pub coefficient: Rational,
    pub exponents: Vec<i64>,
}

/// `(1 - x^base)^(-multiplicity)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricFactor {
    pub base: Vec<i64>,
    pub multiplicity: u32,
}

type Terms = BTreeMap<Vec<i64>, Rational>;

fn to_monomials(terms: &Terms) -> Vec<LaurentMonomial> {
    terms
        .iter()
        .map(|(e, c)| LaurentMonomial {
            coefficient: c.clone(),
            exponents: e.clone(),
        })
        .collect()
}

fn add_term(terms: &mut Terms, exps: Vec<i64>, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(exps) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A constant-term problem in the variables `x_1, ..., x_n` (0-based
/// indices in the API).
#[derive(Clone, Debug)]
pub struct CtProblem {
    nvars: usize,
    numerator: Terms,
    factors: Vec<GeometricFactor>,
}

impl CtProblem {
    /// The problem `CT 1` in `nvars` variables.
    pub fn new(nvars: usize) -> Self {
        let mut numerator = Terms::new();
        numerator.insert(vec![0; nvars], Rational::one());
        CtProblem {
            nvars,
            numerator,
            factors: Vec::new(),
        }
    }

    pub fn from_parts(
        nvars: usize,
        numerator: Vec<LaurentMonomial>,
        factors: Vec<GeometricFactor>,
    ) -> Result<Self> {
        let mut p = CtProblem {
            nvars,
            numerator: Terms::new(),
            factors: Vec::new(),
        };
        for m in numerator {
            p.check_len(&m.exponents)?;
            add_term(&mut p.numerator, m.exponents, m.coefficient);
        }
        for f in factors {
            p.div_geometric(f.base, f.multiplicity)?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> Vec<LaurentMonomial> {
        to_monomials(&self.numerator)
    }

    pub fn factors(&self) -> &[GeometricFactor] {
        &self.factors
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.nvars {
            return Err(Error::invalid(
                "exponents",
                format!("length {} does not match {} variables", v.len(), self.nvars),
            ));
        }
        Ok(())
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        e
    }

    /// Multiplies the numerator by a Laurent polynomial.
    pub fn mul_terms(&mut self, terms: &[(Rational, Vec<i64>)]) -> Result<&mut Self> {
        for (_, e) in terms {
            self.check_len(e)?;
        }
        let mut out = Terms::new();
        for (e1, c1) in &self.numerator {
            for (c2, e2) in terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut out, e, c1 * c2);
            }
        }
        self.numerator = out;
        Ok(self)
    }

    pub fn mul_monomial(&mut self, coefficient: Rational, exponents: Vec<i64>) -> Result<&mut Self> {
        self.mul_terms(&[(coefficient, exponents)])
    }

    pub fn mul_var_pow(&mut self, i: usize, e: i64) -> &mut Self {
        let mut exps = vec![0; self.nvars];
        exps[i] = e;
        self.mul_terms(&[(Rational::one(), exps)]).expect("length matches")
    }

    /// Numerator times `(x_i - x_j)`.
    pub fn mul_difference(&mut self, i: usize, j: usize) -> &mut Self {
        let terms = [(Rational::one(), self.unit(i)), (-Rational::one(), self.unit(j))];
        self.mul_terms(&terms).expect("length matches")
    }

    /// Numerator times `(1 - x_i)`.
    pub fn mul_one_minus(&mut self, i: usize) -> &mut Self {
        let terms = [
            (Rational::one(), vec![0; self.nvars]),
            (-Rational::one(), self.unit(i)),
        ];
        self.mul_terms(&terms).expect("length matches")
    }

    /// Multiplies by `(1 - x^base)^(-multiplicity)`.
    pub fn div_geometric(&mut self, base: Vec<i64>, multiplicity: u32) -> Result<&mut Self> {
        self.check_len(&base)?;
        if base.iter().all(|&b| b == 0) {
            return Err(Error::invalid("base", "factor base must be nonzero"));
        }
        if multiplicity > 0 {
            self.factors.push(GeometricFactor { base, multiplicity });
        }
        Ok(self)
    }

    /// Multiplies by `(1 - x_i)^(-multiplicity)`.
    pub fn div_one_minus(&mut self, i: usize, multiplicity: u32) -> &mut Self {
        let base = self.unit(i);
        self.div_geometric(base, multiplicity).expect("unit base")
    }

    /// Multiplies by `(1 - x_j / x_i)^(-multiplicity)`.
    pub fn div_one_minus_ratio(&mut self, j: usize, i: usize, multiplicity: u32) -> &mut Self {
        let mut base = vec![0; self.nvars];
        base[j] += 1;
        base[i] -= 1;
        self.div_geometric(base, multiplicity).expect("nonzero base")
    }

    /// Multiplies by `(x_i - x_j)^(-k)`, factoring out the larger variable
    /// under the default ordering.
    pub fn div_difference(&mut self, i: usize, j: usize, k: u32) -> &mut Self {
        assert_ne!(i, j, "x_i - x_i is zero");
        if k == 0 {
            return self;
        }
        if i < j {
            // x_i^(-k) (1 - x_j/x_i)^(-k)
            self.mul_var_pow(i, -i64::from(k));
            self.div_one_minus_ratio(j, i, k)
        } else {
            // (-1)^k x_j^(-k) (1 - x_i/x_j)^(-k)
            let sign = if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            let mut e = vec![0; self.nvars];
            e[j] = -i64::from(k);
            self.mul_monomial(sign, e).expect("length matches");
            self.div_one_minus_ratio(i, j, k)
        }
    }
}

/// A constant-term problem in `y` where every factor is a power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainProblem {
    numerator: Vec<LaurentMonomial>,
    factors: Vec<GeometricFactor>,
}

impl ChainProblem {
    pub fn new(numerator: Vec<LaurentMonomial>, factors: Vec<GeometricFactor>) -> Result<Self> {
        for (index, f) in factors.iter().enumerate() {
            if f.base.iter().any(|&b| b < 0) || f.base.iter().all(|&b| b == 0) {
                return Err(Error::NonNormalizableFactor {
                    index,
                    base: f.base.clone(),
                });
            }
        }
        let mut terms = Terms::new();
        for m in numerator {
            add_term(&mut terms, m.exponents, m.coefficient);
        }
        Ok(ChainProblem {
            numerator: to_monomials(&terms),
            factors,
        })
    }

    pub fn numerator(&self) -> &[LaurentMonomial] {
        &self.numerator
    }

    pub fn factors(&self) -> &[GeometricFactor] {
        &self.factors
    }
}

/// Exponent vector after `x_i = y_1 ... y_i`: component `k` is the suffix
/// sum of the `x` exponents from `k` on.
fn chain_exponents(e: &[i64]) -> Vec<i64> {
    let mut out = vec![0; e.len()];
    let mut acc = 0;
    for k in (0..e.len()).rev() {
        acc += e[k];
        out[k] = acc;
    }
    out
}

/// Applies the chain substitution.
///
/// A factor whose substituted base is nonpositive is large under the
/// ordering; it is rewritten with `1/(1-z) = -z^(-1) / (1 - z^(-1))` before
/// expansion. A base with mixed signs cannot be expanded and is an error.
pub fn normalize_chain(p: &CtProblem) -> Result<ChainProblem> {
    let mut numerator: Terms = p
        .numerator
        .iter()
        .map(|(e, c)| (chain_exponents(e), c.clone()))
        .collect();
    let mut factors = Vec::with_capacity(p.factors.len());
    for (index, f) in p.factors.iter().enumerate() {
        let base = chain_exponents(&f.base);
        let nonneg = base.iter().all(|&b| b >= 0);
        let nonpos = base.iter().all(|&b| b <= 0);
        let nonzero = base.iter().any(|&b| b != 0);
        if !nonzero || !(nonneg || nonpos) {
            return Err(Error::NonNormalizableFactor {
                index,
                base: f.base.clone(),
            });
        }
        if nonneg {
            factors.push(GeometricFactor {
                base,
                multiplicity: f.multiplicity,
            });
        } else {
            // (1 - z)^(-m) = (-1)^m z^(-m) (1 - z^(-1))^(-m)
            let m = i64::from(f.multiplicity);
            let sign = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
            let shift: Vec<i64> = base.iter().map(|b| -m * b).collect();
            numerator = numerator
                .into_iter()
                .map(|(e, c)| (e.iter().zip(&shift).map(|(a, b)| a + b).collect(), c * &sign))
                .collect();
            factors.push(GeometricFactor {
                base: base.iter().map(|b| -b).collect(),
                multiplicity: f.multiplicity,
            });
        }
    }
    ChainProblem::new(to_monomials(&numerator), factors)
}

/// Coefficient of `y^0` in a [`ChainProblem`].
///
/// Each numerator monomial `c y^a` needs the factor exponents `k_f >= 0`
/// with `sum k_f base_f = -a`; each solution contributes
/// `c prod C(k_f + m_f - 1, k_f)`. Factors are processed one at a time over
/// the set of residual targets, merging equal residuals, and a residual is
/// dropped as soon as one of its positive components can no longer be
/// reduced by the remaining factors. Visiting more than `max_nodes` search
/// nodes is an error, never a truncated answer.
pub fn ct_extract(p: &ChainProblem, max_nodes: u64) -> Result<Rational> {
    let nvars = p
        .numerator
        .first()
        .map(|m| m.exponents.len())
        .or_else(|| p.factors.first().map(|f| f.base.len()))
        .unwrap_or(0);

    let mut factors: Vec<&GeometricFactor> = p.factors.iter().collect();
    factors.sort_by(|a, b| {
        let sa = a.base.iter().filter(|&&x| x != 0).count();
        let sb = b.base.iter().filter(|&&x| x != 0).count();
        sb.cmp(&sa).then_with(|| b.base.cmp(&a.base))
    });

    // covered[f][c]: some factor at index >= f can still reduce component c
    let mut covered = vec![vec![false; nvars]; factors.len() + 1];
    for f in (0..factors.len()).rev() {
        covered[f] = covered[f + 1].clone();
        for (c, &b) in factors[f].base.iter().enumerate() {
            if b > 0 {
                covered[f][c] = true;
            }
        }
    }
    let feasible = |r: &[i64], cov: &[bool]| r.iter().zip(cov).all(|(&x, &ok)| x == 0 || ok);

    let scale = lcm_denominators(p.numerator.iter().map(|m| &m.coefficient));
    let scale_q = Rational::from_integer(scale.clone());
    let mut states: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for m in &p.numerator {
        let target: Vec<i64> = m.exponents.iter().map(|e| -e).collect();
        if target.iter().any(|&x| x < 0) || !feasible(&target, &covered[0]) {
            continue;
        }
        let v = (&m.coefficient * &scale_q).to_integer();
        *states.entry(target).or_insert_with(BigInt::zero) += v;
    }

    let mut nodes: u64 = 0;
    for (f, factor) in factors.iter().enumerate() {
        let cov = &covered[f + 1];
        let m = i64::from(factor.multiplicity);
        let mut weights: Vec<BigInt> = Vec::new();
        let mut next: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (r, v) in states {
            if v.is_zero() {
                continue;
            }
            let mut cur = r;
            let mut k = 0usize;
            loop {
                nodes += 1;
                if nodes > max_nodes {
                    return Err(Error::ResourceExhausted { cap: max_nodes });
                }
                if feasible(&cur, cov) {
                    while weights.len() <= k {
                        let j = weights.len() as i64;
                        weights.push(binomial(j + m - 1, j));
                    }
                    *next.entry(cur.clone()).or_insert_with(BigInt::zero) += &v * &weights[k];
                }
                let stepped: Vec<i64> = cur.iter().zip(&factor.base).map(|(a, b)| a - b).collect();
                if stepped.iter().any(|&x| x < 0) {
                    break;
                }
                cur = stepped;
                k += 1;
            }
        }
        states = next;
    }

    let total = states
        .into_iter()
        .filter(|(r, _)| r.iter().all(|&x| x == 0))
        .fold(BigInt::zero(), |acc, (_, v)| acc + v);
    debug_assert!(scale.is_positive());
    Ok(Rational::new(total, scale))
}

/// Normalizes and extracts in one step.
pub fn constant_term(p: &CtProblem, max_nodes: u64) -> Result<Rational> {
    ct_extract(&normalize_chain(p)?, max_nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn mono(c: i64, e: &[i64]) -> LaurentMonomial {
        LaurentMonomial {
            coefficient: int(c),
            exponents: e.to_vec(),
        }
    }

    #[test]
    fn normalize_small_ratio() {
        // 1/(1 - x2/x1)
        let mut p = CtProblem::new(2);
        p.div_one_minus_ratio(1, 0, 1);
        let c = normalize_chain(&p).unwrap();
        assert_eq!(c.numerator(), &[mono(1, &[0, 0])]);
        assert_eq!(c.factors(), &[GeometricFactor { base: vec![0, 1], multiplicity: 1 }]);
        assert_eq!(ct_extract(&c, DEFAULT_MAX_NODES).unwrap(), int(1));
    }

    #[test]
    fn normalize_large_ratio_rewrites() {
        // 1/(1 - x1/x2) = -(x2/x1) / (1 - x2/x1), and x2/x1 = y2
        let mut p = CtProblem::new(2);
        p.div_one_minus_ratio(0, 1, 1);
        let c = normalize_chain(&p).unwrap();
        assert_eq!(c.numerator(), &[mono(-1, &[0, 1])]);
        assert_eq!(c.factors(), &[GeometricFactor { base: vec![0, 1], multiplicity: 1 }]);
        assert_eq!(ct_extract(&c, DEFAULT_MAX_NODES).unwrap(), int(0));
    }

    #[test]
    fn normalize_bar_h2() {
        // 1/(x2^t (1 - x2)^2), x2 = y1 y2
        let t = 7;
        let mut p = CtProblem::new(2);
        p.mul_var_pow(1, -t).div_one_minus(1, 2);
        let c = normalize_chain(&p).unwrap();
        assert_eq!(c.numerator(), &[mono(1, &[-t, -t])]);
        assert_eq!(c.factors(), &[GeometricFactor { base: vec![1, 1], multiplicity: 2 }]);
        assert_eq!(ct_extract(&c, DEFAULT_MAX_NODES).unwrap(), int(8));
    }

    #[test]
    fn mixed_sign_base_is_rejected() {
        // x1^2 / x2 is neither small nor large under the chain order
        let mut p = CtProblem::new(2);
        p.div_geometric(vec![2, -1], 1).unwrap();
        assert!(matches!(normalize_chain(&p), Err(Error::NonNormalizableFactor { index: 0, .. })));
        let bad = ChainProblem::new(vec![], vec![GeometricFactor { base: vec![1, -1], multiplicity: 1 }]);
        assert!(bad.is_err());
    }

    #[test]
    fn opposite_ratios_vanish() {
        // 1/((1 - x2/x1)(1 - x1/x2)) has no constant term
        let mut p = CtProblem::new(2);
        p.div_one_minus_ratio(1, 0, 1).div_one_minus_ratio(0, 1, 1);
        assert_eq!(constant_term(&p, DEFAULT_MAX_NODES).unwrap(), int(0));
    }

    #[test]
    fn node_cap_is_an_error() {
        let mut p = CtProblem::new(3);
        p.mul_monomial(int(1), vec![-30, -30, -30]).unwrap();
        for i in 0..3 {
            p.div_one_minus(i, 3);
        }
        assert_eq!(constant_term(&p, 50), Err(Error::ResourceExhausted { cap: 50 }));
    }

    #[test]
    fn binomial_series_coefficient() {
        // CT x^-5 (1-x)^-3 = C(7, 5)
        let mut p = CtProblem::new(1);
        p.mul_var_pow(0, -5).div_one_minus(0, 3);
        assert_eq!(constant_term(&p, DEFAULT_MAX_NODES).unwrap(), int(21));
    }
}
