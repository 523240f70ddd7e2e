//! The matrix of `𝕊^u(A)` in the ordered semistandard basis.
//!
//! Column `T` of the output is the image of `e_T` under `A`. Each wedge column
//! `e_{i_1} ∧ … ∧ e_{i_k}` maps to `Σ_J det A[J, I] e_J`; the product over the
//! columns of `T` is built one tableau column at a time and straightened in
//! the prefix shape after every step. The exchange relations only involve
//! adjacent columns, so relations of a prefix shape remain relations of every
//! longer shape and straightening early is sound.
//!
//! Convention: `A` acts by `e_j ↦ Σ_i A[i][j] e_i` (image of a basis vector is
//! a column), so `𝕊(AB) = 𝕊(A)𝕊(B)`. The transposed convention
//! `g(e_i) = Σ_j a_ij e_j` is [`schur_matrix_row_convention`].

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::minors::{subsets_mask, Minors};
use crate::partition::{Partition, Tableau};
use crate::scalar::{pow, Scalar};
use crate::straighten::{add_scaled, Coordinates, Straightener};

/// Largest `q(u)` accepted by the main construction.
pub const MAX_SIZE: usize = 8;
/// Largest ambient dimension accepted by the main construction.
pub const MAX_DIMENSION: usize = 6;

/// Straighteners for every prefix `(u_1, …, u_t)` of one shape.
pub struct SchurModule {
    shape: Partition,
    n: usize,
    prefixes: Vec<Straightener>,
    /// `(mask, 1-based entries)` of the k-subsets of `1..=n`, indexed by `k`.
    subsets: Vec<Vec<(u64, Vec<u8>)>>,
    /// `steps[t][p * s + j]`: prefix tableau `p` of length `t` followed by
    /// subset `j` of size `u_{t+1}`, straightened. Independent of `A`.
    steps: Vec<Vec<Coordinates>>,
}

impl SchurModule {
    pub fn new(shape: Partition, n: usize) -> Result<Self> {
        if shape.size() > MAX_SIZE || n > MAX_DIMENSION {
            return Err(Error::SizeCap(format!(
                "shape {shape} with n = {n} exceeds q <= {MAX_SIZE}, n <= {MAX_DIMENSION}"
            )));
        }
        if n == 0 {
            return Err(Error::Precondition("ambient dimension must be positive".into()));
        }
        let prefixes: Vec<Straightener> = (1..=shape.len())
            .map(|t| {
                let prefix = Partition::new(shape.parts()[..t].to_vec()).expect("prefix of a partition");
                Straightener::new(prefix, n)
            })
            .collect();
        let subsets: Vec<Vec<(u64, Vec<u8>)>> = (0..=shape.longest_column())
            .map(|k| {
                subsets_mask(n, k)
                    .into_iter()
                    .map(|mask| {
                        let entries = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i as u8 + 1).collect();
                        (mask, entries)
                    })
                    .collect()
            })
            .collect();
        let mut steps = vec![Vec::new()];
        let mut word = Vec::new();
        for t in 1..shape.len() {
            let cols = &subsets[shape.parts()[t]];
            let mut table = Vec::with_capacity(prefixes[t - 1].basis().len() * cols.len());
            for prev in prefixes[t - 1].basis() {
                for (_, entries) in cols {
                    word.clear();
                    word.extend_from_slice(prev.word());
                    word.extend_from_slice(entries);
                    table.push(
                        prefixes[t]
                            .straighten_word(&word)
                            .expect("semistandard prefix followed by an increasing column is column-strict"),
                    );
                }
            }
            steps.push(table);
        }
        Ok(SchurModule { shape, n, prefixes, subsets, steps })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Ordered basis `(e_T)`.
    pub fn basis(&self) -> &[Tableau] {
        self.straightener().basis()
    }

    pub fn rank(&self) -> usize {
        self.basis().len()
    }

    /// Straightener of the full shape.
    pub fn straightener(&self) -> &Straightener {
        self.prefixes.last().expect("partition has a column")
    }

    pub fn matrix<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected a {n}x{n} matrix, got {}x{}",
                a.rows(),
                a.cols(),
                n = self.n
            )));
        }
        // entries are homogeneous of degree q, so S(A) = S(dA) / d^q
        if let Some((int, d)) = T::clear_denominators(a) {
            let scale = pow(&d, self.shape.size());
            return Ok(self.integral_matrix(&int).map(|x| T::from_bigint(x) / scale.clone()));
        }
        Ok(self.integral_matrix(a))
    }

    fn integral_matrix<T: Scalar>(&self, a: &Matrix<T>) -> Matrix<T> {
        let m = self.rank();
        let mut out = Matrix::zeros(m, m);
        if m == 0 {
            return out;
        }
        let parts = self.shape.parts();
        let minors = Minors::new(a, self.shape.longest_column());
        // images[t] = image of the first t+1 columns of the previous tableau
        let mut images: Vec<Vec<T>> = Vec::with_capacity(parts.len());
        let mut previous: Option<&Tableau> = None;
        for (col_idx, tab) in self.basis().iter().enumerate() {
            let cols = tab.columns();
            let reuse = match previous {
                None => 0,
                Some(prev) => prev
                    .columns()
                    .iter()
                    .zip(cols.iter())
                    .take_while(|(x, y)| x == y)
                    .count()
                    .min(parts.len() - 1),
            };
            images.truncate(reuse);
            for t in reuse..parts.len() {
                let col_mask = cols[t].iter().fold(0u64, |acc, &x| acc | (1 << (x - 1)));
                let img = if t == 0 {
                    self.first_column_image(&minors, col_mask)
                } else {
                    self.extend_image(&images[t - 1], t, &minors, col_mask)
                };
                images.push(img);
            }
            for (row, v) in images[parts.len() - 1].iter().enumerate() {
                out[(row, col_idx)] = v.clone();
            }
            previous = Some(tab);
        }
        out
    }

    fn first_column_image<T: Scalar>(&self, minors: &Minors<T>, col_mask: u64) -> Vec<T> {
        let s = &self.prefixes[0];
        let mut v = vec![T::zero(); s.basis().len()];
        for (mask, entries) in &self.subsets[self.shape.parts()[0]] {
            let minor = minors.get_mask(*mask, col_mask);
            if minor.is_zero() {
                continue;
            }
            let idx = s.basis_index(entries).expect("a single increasing column is semistandard");
            v[idx] = minor.clone();
        }
        v
    }

    fn extend_image<T: Scalar>(&self, prev: &[T], t: usize, minors: &Minors<T>, col_mask: u64) -> Vec<T> {
        let cols = &self.subsets[self.shape.parts()[t]];
        let table = &self.steps[t];
        let mut v = vec![T::zero(); self.prefixes[t].basis().len()];
        let col_minors: Vec<(usize, &T)> = cols
            .iter()
            .enumerate()
            .map(|(j, (mask, _))| (j, minors.get_mask(*mask, col_mask)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        for (p_idx, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(j, minor) in &col_minors {
                let coeff = c.clone() * minor.clone();
                for (idx, z) in table[p_idx * cols.len() + j].iter() {
                    add_scaled(&mut v[*idx], &coeff, z);
                }
            }
        }
        v
    }
}

/// `𝕊^u_n(A)` for a square `A` of size `n`.
pub fn schur_matrix<T: Scalar>(p: &Partition, a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    SchurModule::new(p.clone(), a.rows())?.matrix(a)
}

/// Matrix in the convention `g(e_i) = Σ_j a_ij e_j`: `𝕊(Aᵀ)ᵀ`.
pub fn schur_matrix_row_convention<T: Scalar>(p: &Partition, a: &Matrix<T>) -> Result<Matrix<T>> {
    Ok(schur_matrix(p, &a.transpose())?.transpose())
}

/// Checks `𝕊^{u+k}(A) = det(A)^k · 𝕊^u(A)`, where `u+k` prepends `k`
/// columns of length `n` and tableaux correspond by prepending `k` copies of
/// the column `(1, …, n)`.
pub fn det_twist_check<T: Scalar>(u: &Partition, k: usize, a: &Matrix<T>) -> Result<bool> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch("det twist needs a square matrix".into()));
    }
    if u.len() != n {
        return Err(Error::Precondition(format!(
            "det twist needs r(u) = n, got r({u}) = {} and n = {n}",
            u.len()
        )));
    }
    if k == 0 {
        return Err(Error::Precondition("twist exponent must be positive".into()));
    }
    let twisted = u.det_twist(n, k)?;
    let base = SchurModule::new(u.clone(), n)?;
    let twist = SchurModule::new(twisted, n)?;

    // canonical bijection of tableau index sets
    if base.rank() != twist.rank() {
        return Ok(false);
    }
    let full: Vec<u8> = (1..=n as u8).collect();
    for (t0, t1) in base.basis().iter().zip(twist.basis()) {
        let mut w = full.repeat(k);
        w.extend_from_slice(t0.word());
        if w != t1.word() {
            return Ok(false);
        }
    }

    let det = a.det_expansion()?;
    let lhs = twist.matrix(a)?;
    let rhs = base.matrix(a)?.scale(&pow(&det, k));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(n: usize, v: &[i64]) -> Matrix<BigRational> {
        Matrix::new(n, n, v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn sym_cube_of_diagonal() {
        let s = schur_matrix(&p(&[1, 1, 1]), &mat(2, &[2, 0, 0, 3])).unwrap();
        assert_eq!(s, Matrix::diagonal_from(&[q(8), q(12), q(18), q(27)]));
    }

    #[test]
    fn sym_cube_of_unipotent() {
        let s = schur_matrix(&p(&[1, 1, 1]), &mat(2, &[1, 1, 0, 1])).unwrap();
        // e1^a e2^b ↦ e1^a (e1+e2)^b
        let expect = mat(4, &[1, 1, 1, 1, 0, 1, 2, 3, 0, 0, 1, 3, 0, 0, 0, 1]);
        assert_eq!(s, expect);
    }

    #[test]
    fn identity_goes_to_identity() {
        for parts in [&[2, 1][..], &[1, 1], &[3, 2, 1], &[2, 2, 1]] {
            let s = schur_matrix(&p(parts), &Matrix::<BigRational>::identity(3)).unwrap();
            assert_eq!(s, Matrix::identity(s.rows()));
        }
    }

    #[test]
    fn exterior_power_is_determinant() {
        let a = mat(3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let s = schur_matrix(&p(&[3]), &a).unwrap();
        assert_eq!(s, Matrix::new(1, 1, vec![a.det().unwrap()]).unwrap());
    }

    #[test]
    fn std_is_the_matrix_itself() {
        let a = mat(3, &[2, -1, 0, 5, 3, 1, 0, 7, 4]);
        assert_eq!(schur_matrix(&p(&[1]), &a).unwrap(), a);
    }

    #[test]
    fn functorial_on_a_fixed_pair() {
        let a = mat(3, &[1, 2, 0, -1, 1, 3, 2, 0, 1]);
        let b = mat(3, &[0, 1, 1, 2, -1, 0, 1, 1, 1]);
        for parts in [&[2, 1][..], &[2, 1, 1], &[3, 1], &[2, 2]] {
            let u = p(parts);
            let lhs = schur_matrix(&u, &(&a * &b)).unwrap();
            let rhs = &schur_matrix(&u, &a).unwrap() * &schur_matrix(&u, &b).unwrap();
            assert_eq!(lhs, rhs, "shape {u}");
        }
    }

    #[test]
    fn works_over_integers_and_floats() {
        let ai = Matrix::new(2, 2, vec![1i64, 2, 3, 4]).unwrap();
        let si = schur_matrix(&p(&[1, 1]), &ai).unwrap();
        assert_eq!(si.entries(), &[1, 2, 4, 6, 10, 16, 9, 12, 16]);
        let af = ai.map(|&x| x as f64);
        let sf = schur_matrix(&p(&[1, 1]), &af).unwrap();
        assert_eq!(sf, si.map(|&x| x as f64));
    }

    #[test]
    fn det_twist_example() {
        let a = mat(2, &[2, 0, 0, 3]);
        assert!(det_twist_check(&p(&[1, 1]), 1, &a).unwrap());
        let twisted = schur_matrix(&p(&[2, 1, 1]), &a).unwrap();
        assert_eq!(twisted, Matrix::diagonal_from(&[q(24), q(36), q(54)]));
    }

    #[test]
    fn det_twist_preconditions() {
        let a = mat(2, &[1, 1, 0, 1]);
        assert!(det_twist_check(&p(&[2, 1, 1]), 1, &a).is_err());
        assert!(det_twist_check(&p(&[1, 1]), 0, &a).is_err());
    }

    #[test]
    fn row_convention_bridge() {
        let a = mat(2, &[1, 2, 3, 4]);
        let b = mat(2, &[0, 1, -1, 2]);
        let u = p(&[1, 1]);
        let row = |m: &Matrix<BigRational>| schur_matrix_row_convention(&u, m).unwrap();
        assert_eq!(row(&(&a * &b)), &row(&a) * &row(&b));
        let d = mat(2, &[5, 0, 0, 7]);
        assert_eq!(row(&d), schur_matrix(&u, &d).unwrap());
    }

    #[test]
    fn caps_and_shape_errors() {
        assert!(matches!(
            schur_matrix(&p(&[1; 9]), &Matrix::<BigRational>::identity(2)),
            Err(Error::SizeCap(_))
        ));
        assert!(matches!(
            schur_matrix(&p(&[1]), &Matrix::<BigRational>::identity(7)),
            Err(Error::SizeCap(_))
        ));
        let rect = Matrix::new(2, 3, vec![q(1); 6]).unwrap();
        assert!(schur_matrix(&p(&[1]), &rect).is_err());
    }

    #[test]
    fn zero_module_gives_empty_matrix() {
        let s = schur_matrix(&p(&[3, 1]), &Matrix::<BigRational>::identity(2)).unwrap();
        assert_eq!(s.rows(), 0);
    }
}
