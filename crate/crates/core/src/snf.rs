//! Smith normal form over a Euclidean ring of integers.

use num_integer::Integer;
use num_traits::Signed;

use crate::matrix::Matrix;

/// Nonzero invariant factors `d_1 | d_2 | … | d_rank`, all positive.
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors<T>(a: &Matrix<T>) -> Vec<T>
where
    T: Integer + Signed + Clone,
{
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<T>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let f = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let v = m[t][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let f = m[t][j].div_floor(&m[t][t]);
            for row in m.iter_mut().skip(t) {
                let v = row[t].clone() * f.clone();
                row[j] = row[j].clone() - v;
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] = m[t][j].clone() + v;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
