use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of `n x n` nonnegative integer matrices with every row and column
/// summing to `t`.
///
/// Rows are filled one at a time by backtracking; partial results are
/// memoized on the vector of remaining column sums.
pub fn count_magic_squares(n: usize, t: u32) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut memo = HashMap::new();
    count_rows(n, &vec![t; n], t, &mut memo)
}

fn count_rows(rows_left: usize, cols: &[u32], t: u32, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
    if rows_left == 0 {
        return if cols.iter().all(|&c| c == 0) {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let mut key_cols = cols.to_vec();
    // column order does not affect the count
    key_cols.sort_unstable();
    let key = (rows_left, key_cols);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    let mut row = vec![0u32; cols.len()];
    fill_row(0, t, cols, &mut row, &mut |r| {
        let rest: Vec<u32> = cols.iter().zip(r).map(|(c, x)| c - x).collect();
        total += count_rows(rows_left - 1, &rest, t, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn fill_row(col: usize, left: u32, caps: &[u32], row: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if col == caps.len() - 1 {
        if left <= caps[col] {
            row[col] = left;
            visit(row);
        }
        return;
    }
    for v in 0..=left.min(caps[col]) {
        row[col] = v;
        fill_row(col + 1, left - v, caps, row, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_matrices() {
        assert_eq!(count_magic_squares(3, 1), BigInt::from(6));
        assert_eq!(count_magic_squares(4, 1), BigInt::from(24));
    }

    #[test]
    fn small_orders() {
        for t in 0..6 {
            assert_eq!(count_magic_squares(1, t), BigInt::one());
            assert_eq!(count_magic_squares(2, t), BigInt::from(t + 1));
        }
        assert_eq!(count_magic_squares(3, 2), BigInt::from(21));
        assert_eq!(count_magic_squares(3, 0), BigInt::one());
    }
}
