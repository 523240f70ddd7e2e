//! Brute-force model of `𝕊^u(V)` inside `V^{⊗q}`.
//!
//! Tensor positions follow the column-major reading order of the diagram.
//! `ψ(e_w)` antisymmetrizes each column of `e_{w_1} ⊗ … ⊗ e_{w_q}` and then
//! symmetrizes each row. The image of `ψ` is a copy of the Schur module, and
//! `e_T ↦ ψ(e_T)` is an equivariant isomorphism from the quotient
//! description. Nothing here touches the straightening code.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partition::{enumerate_tableaux, hook_content_rank, Partition};
use crate::scalar::Field;
use crate::straighten::{combinations, permutation_is_odd};

pub const ORACLE_MAX_SIZE: usize = 6;
pub const ORACLE_MAX_DIMENSION: usize = 4;

/// `A^{⊗q}` restricted to the image of the Young symmetrizer, in an echelon
/// basis of that image, together with the coordinates of `ψ(e_T)`.
#[derive(Clone, Debug)]
pub struct OracleResult<T> {
    /// Action in the echelon basis.
    pub matrix: Matrix<T>,
    /// Column `T` holds the echelon coordinates of `ψ(e_T)`.
    pub witness: Matrix<T>,
}

impl<T: Field> OracleResult<T> {
    /// `witness⁻¹ · matrix · witness`, or an invariant breach if the witness
    /// is singular.
    pub fn conjugated(&self) -> Result<Matrix<T>> {
        let inv = self
            .witness
            .inverse()?
            .ok_or_else(|| Error::InvariantBreach("oracle witness is singular".into()))?;
        Ok(&(&inv * &self.matrix) * &self.witness)
    }

    /// Exact check `matrix · witness = witness · s` with an invertible witness.
    pub fn agrees_with(&self, s: &Matrix<T>) -> Result<bool> {
        if s.rows() != self.witness.cols() || !s.is_square() {
            return Ok(false);
        }
        if self.witness.rows() > 0 && self.witness.rank() != self.witness.rows() {
            return Ok(false);
        }
        Ok(&self.matrix * &self.witness == &self.witness * s)
    }
}

/// Position groups of the diagram: columns and rows, in reading-word indices.
fn groups(p: &Partition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut cols = Vec::new();
    let mut start = 0;
    for &len in p.parts() {
        cols.push((start..start + len).collect::<Vec<_>>());
        start += len;
    }
    let rows = (0..p.longest_column())
        .map(|b| cols.iter().filter(|c| c.len() > b).map(|c| c[b]).collect())
        .collect();
    (cols, rows)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Sum over permutations of each group, optionally signed.
fn symmetrize(
    input: HashMap<Vec<u8>, i64>,
    groups: &[Vec<usize>],
    signed: bool,
) -> HashMap<Vec<u8>, i64> {
    let mut cur = input;
    for g in groups.iter().filter(|g| g.len() > 1) {
        let perms = permutations(g.len());
        let mut next: HashMap<Vec<u8>, i64> = HashMap::new();
        for (word, c) in &cur {
            for perm in &perms {
                let mut w = word.clone();
                for (slot, &src) in perm.iter().enumerate() {
                    w[g[slot]] = word[g[src]];
                }
                let sign = if signed && permutation_is_odd(perm) { -1 } else { 1 };
                *next.entry(w).or_insert(0) += sign * c;
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur
}

fn word_index(word: &[u8], n: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * n + (x as usize - 1))
}

/// Reduced row echelon basis of a subspace of `T^len`, pivot entries 1.
struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Echelon<T> {
    fn reduce(&self, v: &mut [T]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
    }

    /// Adds `v` if independent; returns whether it was added.
    fn push(&mut self, mut v: Vec<T>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / v[p].clone();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Coordinates of a vector known to lie in the span.
    fn coordinates(&self, v: &[T]) -> Result<Vec<T>> {
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        self.reduce(&mut rest);
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(Error::InvariantBreach("vector left the symmetrizer image".into()));
        }
        Ok(coords)
    }
}

/// `A^{⊗q} v`, one tensor mode at a time.
fn tensor_power_apply<T: Field>(a: &Matrix<T>, v: &[T], q: usize) -> Vec<T> {
    let n = a.rows();
    let mut cur = v.to_vec();
    let mut stride = 1;
    for _ in 0..q {
        let mut next = vec![T::zero(); cur.len()];
        for (idx, x) in cur.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let k = (idx / stride) % n;
            let base = idx - k * stride;
            for i in 0..n {
                let c = &a[(i, k)];
                if !c.is_zero() {
                    let slot = &mut next[base + i * stride];
                    *slot = slot.clone() + c.clone() * x.clone();
                }
            }
        }
        cur = next;
        stride *= n;
    }
    cur
}

/// Oracle for `𝕊^u(A)` with the default caps.
pub fn schur_oracle<T: Field>(p: &Partition, a: &Matrix<T>) -> Result<OracleResult<T>> {
    schur_oracle_capped(p, a, ORACLE_MAX_SIZE, ORACLE_MAX_DIMENSION)
}

pub fn schur_oracle_capped<T: Field>(
    p: &Partition,
    a: &Matrix<T>,
    max_size: usize,
    max_dimension: usize,
) -> Result<OracleResult<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let q = p.size();
    if q > max_size || n > max_dimension {
        return Err(Error::SizeCap(format!(
            "oracle limited to q <= {max_size}, n <= {max_dimension}; got q = {q}, n = {n}"
        )));
    }
    let target: usize = hook_content_rank(p, n)
        .try_into()
        .map_err(|_| Error::SizeCap("module too large".into()))?;
    let (cols, rows) = groups(p);
    let len = n.pow(q as u32);

    let psi = |word: &[u8]| -> Vec<T> {
        let start = HashMap::from([(word.to_vec(), 1i64)]);
        let anti = symmetrize(start, &cols, true);
        let sym = symmetrize(anti, &rows, false);
        let mut v = vec![T::zero(); len];
        for (w, c) in sym {
            v[word_index(&w, n)] = T::from_i64(c);
        }
        v
    };

    // echelon basis from column-strict words, stopping at the expected rank
    let mut ech = Echelon { rows: Vec::new(), pivots: Vec::new() };
    if target > 0 {
        let per_column: Vec<Vec<Vec<usize>>> = p.parts().iter().map(|&k| combinations(n, k)).collect();
        let mut choice = vec![0usize; per_column.len()];
        'outer: loop {
            let word: Vec<u8> = choice
                .iter()
                .zip(&per_column)
                .flat_map(|(&c, sets)| sets[c].iter().map(|&i| i as u8 + 1))
                .collect();
            ech.push(psi(&word));
            if ech.rows.len() == target {
                break;
            }
            let mut pos = choice.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < per_column[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
    if ech.rows.len() != target {
        return Err(Error::InvariantBreach(format!(
            "symmetrizer image of {p} has dimension {} but the hook-content rank is {target}",
            ech.rows.len()
        )));
    }

    let mut matrix = Matrix::zeros(target, target);
    for (j, row) in ech.rows.iter().enumerate() {
        let image = tensor_power_apply(a, row, q);
        for (i, c) in ech.coordinates(&image)?.into_iter().enumerate() {
            matrix[(i, j)] = c;
        }
    }

    let tableaux = enumerate_tableaux(p, n);
    let mut witness = Matrix::zeros(target, tableaux.len());
    for (j, t) in tableaux.iter().enumerate() {
        for (i, c) in ech.coordinates(&psi(t.word()))?.into_iter().enumerate() {
            witness[(i, j)] = c;
        }
    }
    Ok(OracleResult { matrix, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::schur_matrix;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(n: usize, v: &[i64]) -> Matrix<BigRational> {
        Matrix::new(n, n, v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn standard_rep_is_the_matrix() {
        let a = mat(3, &[1, 2, 0, 0, 1, 5, 3, 0, 2]);
        let o = schur_oracle(&p(&[1]), &a).unwrap();
        assert_eq!(o.conjugated().unwrap(), a);
    }

    #[test]
    fn top_exterior_power_is_det() {
        let a = mat(3, &[1, 2, 0, 0, 1, 5, 3, 0, 2]);
        let o = schur_oracle(&p(&[3]), &a).unwrap();
        assert_eq!(o.matrix, Matrix::new(1, 1, vec![a.det().unwrap()]).unwrap());
    }

    #[test]
    fn matches_straightening_on_small_shapes() {
        let a = mat(3, &[2, 1, 0, -1, 1, 3, 1, 0, 1]);
        for parts in [&[2, 1][..], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1]] {
            let u = p(parts);
            let o = schur_oracle(&u, &a).unwrap();
            let s = schur_matrix(&u, &a).unwrap();
            assert!(o.agrees_with(&s).unwrap(), "shape {u}");
        }
    }

    #[test]
    fn swap_on_sym_square_has_the_right_trace() {
        let a = mat(2, &[0, 1, 1, 0]);
        let o = schur_oracle(&p(&[1, 1]), &a).unwrap();
        // eigenvalues of the swap on Sym^2: 1, 1, -1
        assert_eq!(o.matrix.trace(), q(1));
    }

    #[test]
    fn caps() {
        let a = Matrix::<BigRational>::identity(5);
        assert!(matches!(schur_oracle(&p(&[1]), &a), Err(Error::SizeCap(_))));
        let b = Matrix::<BigRational>::identity(2);
        assert!(matches!(schur_oracle(&p(&[1; 7]), &b), Err(Error::SizeCap(_))));
    }

    #[test]
    fn zero_module() {
        let o = schur_oracle(&p(&[3]), &Matrix::<BigRational>::identity(2)).unwrap();
        assert_eq!(o.matrix.rows(), 0);
    }
}
