//! All square minors of a small matrix, by Laplace expansion along the first
//! row with memoization over index subsets. Ring-generic: no division.

use std::collections::HashMap;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Minors `det A[J, I]` for all row sets `J` and column sets `I` with
/// `|J| = |I| <= max_size`, keyed by bitmasks.
pub struct Minors<T> {
    table: HashMap<(u64, u64), T>,
}

impl<T: Scalar> Minors<T> {
    pub fn new(a: &Matrix<T>, max_size: usize) -> Self {
        assert!(a.rows() <= 64 && a.cols() <= 64);
        let mut table = HashMap::new();
        table.insert((0u64, 0u64), T::one());
        let row_sets = |k| subsets_mask(a.rows(), k);
        let col_sets = |k| subsets_mask(a.cols(), k);
        for k in 1..=max_size.min(a.rows()).min(a.cols()) {
            for &rows in &row_sets(k) {
                let first = rows.trailing_zeros() as usize;
                let rest = rows & !(1u64 << first);
                for &cols in &col_sets(k) {
                    let mut acc = T::zero();
                    for (t, c) in bits(cols).enumerate() {
                        let entry = &a[(first, c)];
                        if entry.is_zero() {
                            continue;
                        }
                        let sub = &table[&(rest, cols & !(1u64 << c))];
                        if sub.is_zero() {
                            continue;
                        }
                        let term = entry.clone() * sub.clone();
                        acc = if t % 2 == 0 { acc + term } else { acc - term };
                    }
                    table.insert((rows, cols), acc);
                }
            }
        }
        Minors { table }
    }

    pub fn get_mask(&self, rows: u64, cols: u64) -> &T {
        &self.table[&(rows, cols)]
    }

    /// Minor on sorted 0-based index lists.
    pub fn get(&self, rows: &[usize], cols: &[usize]) -> &T {
        self.get_mask(to_mask(rows), to_mask(cols))
    }
}

pub(crate) fn to_mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask & (1u64 << i) != 0)
}

/// All `k`-subsets of `0..n` as bitmasks.
pub(crate) fn subsets_mask(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1u64 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minors_of_three_by_three() {
        let a = Matrix::new(3, 3, vec![1i64, 2, 3, 4, 5, 6, 7, 8, 10]).unwrap();
        let m = Minors::new(&a, 3);
        assert_eq!(*m.get(&[0, 1, 2], &[0, 1, 2]), -3);
        assert_eq!(*m.get(&[0, 2], &[1, 2]), 2 * 10 - 3 * 8);
        assert_eq!(*m.get(&[1], &[2]), 6);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_mask(5, 2).len(), 10);
        assert_eq!(subsets_mask(3, 0), vec![0]);
        assert!(subsets_mask(2, 3).is_empty());
    }
}
