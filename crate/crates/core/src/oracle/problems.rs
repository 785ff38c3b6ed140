//! Concrete constant-term problems built for the oracle.

use num_bigint::BigInt;
use num_traits::One;

use super::{constant_term, CtProblem};
use crate::arith::{binomial, multinomial, Rational};
use crate::{Error, Result};

/// The integrand whose constant term is `h_n(t)`:
///
/// ```text
/// (1 - x_n) prod_{i=2}^{n-1} x_i^(n-1) (x_i - x_n)
/// ------------------------------------------------------------
/// x_n^t prod_{i=2}^{n} (1 - x_i)^3 prod_{2<=i<j<=n} (x_i - x_j)^2
/// ```
///
/// Built in `n` variables with `x_1` absent (it has been set to 1).
pub fn bar_h_problem(n: u32, t: i64) -> Result<CtProblem> {
    if n < 2 {
        return Err(Error::invalid("n", format!("n >= 2 required, got {n}")));
    }
    let n = n as usize;
    let last = n - 1;
    let mut p = CtProblem::new(n);
    p.mul_one_minus(last);
    for i in 1..last {
        p.mul_var_pow(i, n as i64 - 1);
        p.mul_difference(i, last);
    }
    p.mul_var_pow(last, -t);
    for i in 1..n {
        p.div_one_minus(i, 3);
    }
    for i in 1..n {
        for j in i + 1..n {
            p.div_difference(i, j, 2);
        }
    }
    Ok(p)
}

/// `h_n(t)` by direct constant-term extraction.
pub fn hn_point(n: u32, t: i64, max_nodes: u64) -> Result<Rational> {
    if t < 0 {
        return Err(Error::invalid("t", format!("t >= 0 required, got {t}")));
    }
    constant_term(&bar_h_problem(n, t)?, max_nodes)
}

/// The integrand `Phi_n * x_1 ... x_n` whose constant term is the residue
/// `D_n(ell, t, k1, k2, k3)`. `None` when `ell` is out of `0..=n-1`.
///
/// `e_ell[Y - y_n]` with `y_i = 1 - x_i` is expanded in the monomial basis:
/// `e_ell(1-x_1, ..., 1-x_{n-1}) = sum_T (-1)^|T| C(n-1-|T|, ell-|T|) x^T`.
pub fn dn_problem(n: u32, ell: i64, t: i64, k1: u32, k2: u32, k3: u32) -> Result<Option<CtProblem>> {
    if n < 2 {
        return Err(Error::invalid("n", format!("n >= 2 required, got {n}")));
    }
    if ell < 0 || ell > i64::from(n) - 1 {
        return Ok(None);
    }
    let n = n as usize;
    let last = n - 1;
    let mut p = CtProblem::new(n);

    let mut esym = Vec::new();
    for mask in 0u32..(1 << last) {
        let size = i64::from(mask.count_ones());
        if size > ell {
            continue;
        }
        let c = binomial(last as i64 - size, ell - size);
        let c = if size % 2 == 0 { c } else { -c };
        let exps = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
        esym.push((Rational::from_integer(c), exps));
    }
    p.mul_terms(&esym)?;

    for i in 0..n {
        p.mul_var_pow(i, i64::from(k1) + 1);
    }
    p.mul_var_pow(last, -t);
    for i in 0..last {
        p.mul_difference(i, last);
    }
    for i in 0..n {
        p.div_one_minus(i, k2);
    }
    for i in 0..n {
        for j in i + 1..n {
            p.div_difference(i, j, k3);
        }
    }
    Ok(Some(p))
}

/// `D_n(ell, t, k1, k2, k3)`; zero for `ell` outside `0..=n-1`.
pub fn dn_point(n: u32, ell: i64, t: i64, k1: u32, k2: u32, k3: u32, max_nodes: u64) -> Result<Rational> {
    match dn_problem(n, ell, t, k1, k2, k3)? {
        None => Ok(Rational::from_integer(BigInt::from(0))),
        Some(p) => constant_term(&p, max_nodes),
    }
}

/// The integrand `prod_i x_i^((m_i - 1) t) / prod_{j != i} (1 - x_j/x_i)^(m_i)`.
pub fn weak_composition_problem(m: &[u32], t: i64) -> Result<CtProblem> {
    let n = m.len();
    let total: u32 = m.iter().sum();
    if total as usize != n {
        return Err(Error::invalid(
            "m",
            format!("{m:?} is not a weak composition of {n} into {n} parts"),
        ));
    }
    let mut p = CtProblem::new(n);
    for (i, &mi) in m.iter().enumerate() {
        p.mul_var_pow(i, (i64::from(mi) - 1) * t);
        for j in (0..n).filter(|&j| j != i) {
            if mi > 0 {
                p.div_one_minus_ratio(j, i, mi);
            }
        }
    }
    Ok(p)
}

pub fn ct_weak_composition(m: &[u32], t: i64, max_nodes: u64) -> Result<Rational> {
    constant_term(&weak_composition_problem(m, t)?, max_nodes)
}

/// All weak compositions of `n` into `n` parts, in lexicographically
/// decreasing order.
pub fn weak_compositions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rest).rev() {
            cur.push(v);
            rec(rest - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    rec(n, n as usize, &mut Vec::new(), &mut out);
    out
}

/// `H_n(t)` assembled as the multinomial-weighted sum of `CT H^m` over all
/// weak compositions `m`.
pub fn assemble_hn(n: u32, t: i64, max_nodes: u64) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut acc = Rational::from_integer(BigInt::from(0));
    for m in weak_compositions(n) {
        let ct = ct_weak_composition(&m, t, max_nodes)?;
        acc += ct * Rational::from_integer(multinomial(&m));
    }
    if !acc.is_integer() {
        return Err(Error::Consistency(format!("H_{n}({t}) assembled to non-integer {acc}")));
    }
    Ok(acc.to_integer())
}
