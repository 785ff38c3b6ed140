use num_bigint::BigInt;

use crate::arith::{int, UniPoly};

/// Determinant of the `(n-1) x (n-1)` tridiagonal matrix `C` with (1-based)
///
/// ```text
/// C[i][i]   = t - (n-2i+2)(n-1-i) - 1
/// C[i][i-1] = (i-1)(n-i)
/// C[i][i+1] = -(n-1-i)(n-i)
/// ```
///
/// computed by the leading-minor recurrence
/// `f_k = C[k][k] f_{k-1} - C[k][k-1] C[k-1][k] f_{k-2}`.
pub fn det_c(n: u32) -> UniPoly {
    let n = i64::from(n);
    let diag = |i: i64| UniPoly::from_ints(&[-(n - 2 * i + 2) * (n - 1 - i) - 1, 1]);
    let mut prev = UniPoly::one();
    let mut cur = diag(1);
    for k in 2..n {
        let off = (k - 1) * (n - k) * -((n - 1 - (k - 1)) * (n - (k - 1)));
        let next = &(&diag(k) * &cur) - &prev.scale(&int(off));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The conjectured factorization of [`det_c`].
pub fn conjectured_det_c(n: u32) -> UniPoly {
    let n = i64::from(n);
    let mut roots = vec![n - 1];
    if n % 2 == 0 {
        let r = n / 2;
        for i in 0..=r - 2 {
            let root = n - 1 + r * (r - 1) - i * (i + 1);
            roots.extend([root, root]);
        }
    } else {
        let r = (n + 1) / 2;
        roots.push(n - 1 + (r - 1) * (r - 1));
        for i in 1..=r - 2 {
            let root = n - 1 + (r - 1) * (r - 1) - i * i;
            roots.extend([root, root]);
        }
    }
    UniPoly::from_roots(roots)
}

pub fn check_detc(n: u32) -> bool {
    n >= 3 && det_c(n) == conjectured_det_c(n)
}

/// Largest integer root of `p`, if any.
pub fn largest_integer_root(p: &UniPoly) -> Option<BigInt> {
    p.integer_roots().into_iter().map(|(r, _)| r).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{dn_recursion, hn_recursion};
    use crate::window_radius;

    fn roots(rs: &[i64]) -> UniPoly {
        UniPoly::from_roots(rs.iter().copied())
    }

    #[test]
    fn golden_14_and_15() {
        assert_eq!(
            det_c(14),
            roots(&[13, 55, 55, 53, 53, 49, 49, 43, 43, 35, 35, 25, 25])
        );
        assert_eq!(
            det_c(15),
            roots(&[14, 63, 62, 62, 59, 59, 54, 54, 47, 47, 38, 38, 27, 27])
        );
    }

    #[test]
    fn small_cases() {
        assert_eq!(det_c(6), roots(&[5, 11, 11, 9, 9]));
        assert_eq!(det_c(4), roots(&[3, 5, 5]));
        assert_eq!(det_c(3), roots(&[2, 3]));
    }

    #[test]
    fn conjecture_holds_up_to_30() {
        for n in 3..=30 {
            assert!(check_detc(n), "n={n}");
            assert_eq!(det_c(n).degree(), Some(n as usize - 1));
        }
    }

    #[test]
    fn leading_recursion_coefficient_is_det_c() {
        for n in 3..=12 {
            let c0 = dn_recursion(n).unwrap().c[0].clone();
            assert_eq!(c0.primitive(), det_c(n).primitive(), "n={n}");
        }
    }

    #[test]
    fn largest_root_is_window_radius() {
        for n in 3..=12 {
            let c0 = hn_recursion(n).unwrap().c[0].clone();
            assert_eq!(largest_integer_root(&c0), Some(BigInt::from(window_radius(n))), "n={n}");
        }
    }
}
