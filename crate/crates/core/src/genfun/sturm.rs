use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, UniPoly};
use crate::{Error, Result};

/// Squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::invalid("p", "zero polynomial"));
    }
    let f = to_int(p);
    let g = int_gcd(&f, &derivative(&f));
    p.exact_div(&from_int(&g))
}

/// Squarefree decomposition `p = c * prod_k f_k^k` (Yun), as `(f_k, k)` with
/// nonconstant `f_k`.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::invalid("p", "zero polynomial"));
    }
    let mut out = Vec::new();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.exact_div(&a)?;
    let mut c = dp.exact_div(&a)?;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn to_int(p: &UniPoly) -> IntPoly {
    p.content_and_primitive().1
}

fn from_int(v: &[BigInt]) -> UniPoly {
    UniPoly::new(v.iter().cloned().map(Rational::from_integer).collect())
}

fn derivative(v: &[BigInt]) -> IntPoly {
    v.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Divides by the positive gcd of the coefficients.
fn strip(v: IntPoly) -> IntPoly {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|c| c / &g).collect()
    }
}

/// A positive multiple of the remainder of `a` by `b`.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut flips = false;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r = trim(r);
        flips ^= lb.is_negative();
    }
    if flips {
        for c in r.iter_mut() {
            *c = -&*c;
        }
    }
    strip(r)
}

fn int_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (strip(trim(a.to_vec())), strip(trim(b.to_vec())));
    while !b.is_empty() {
        let r = positive_prem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn sign_changes(signs: impl Iterator<Item = bool>) -> usize {
    let v: Vec<bool> = signs.collect();
    v.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(p: &UniPoly) -> Result<usize> {
    let Some(deg) = p.degree() else {
        return Err(Error::invalid("p", "zero polynomial"));
    };
    if deg == 0 {
        return Ok(0);
    }
    // primitive parts only ever differ by positive factors along the chain
    let f = to_int(p);
    let df = strip(derivative(&f));
    let mut chain = vec![f, df];
    loop {
        let k = chain.len();
        let r = positive_prem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let at_pos = chain.iter().map(|q| q.last().unwrap().is_positive());
    let at_neg = chain.iter().map(|q| q.last().unwrap().is_positive() == (q.len() % 2 == 1));
    Ok(sign_changes(at_neg) - sign_changes(at_pos))
}

/// `(all roots real, number of distinct real roots)`.
pub fn sturm_real_rooted(p: &UniPoly) -> Result<(bool, usize)> {
    if p.is_zero() {
        return Err(Error::invalid("p", "zero polynomial"));
    }
    let sf = squarefree_part(p)?;
    let count = count_real_roots(&sf)?;
    Ok((count == sf.degree().unwrap(), count))
}
