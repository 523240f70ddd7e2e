//! Induced diagonal parameters, the weight map `k ↦ S∘k`, the inequality
//! suite for that map and the kernel of `𝕊^u` on the diagonal torus.
//!
//! The kernel here is the torus part only: the kernel of
//! `t ↦ (t^{content(T)})_T` on `G_m^n`, read off from the Smith normal form
//! of the content matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partition::{content, enumerate_tableaux, validate_ast, ContentVector, Partition, Tableau};
use crate::snf::invariant_factors;

/// `η_T = Π η_i^{content(T)_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterMonomial {
    pub tableau: Tableau,
    pub exponents: ContentVector,
}

pub fn induced_parameters(p: &Partition, n: usize) -> Result<Vec<ParameterMonomial>> {
    let tabs = enumerate_tableaux(p, n);
    if tabs.is_empty() {
        return Err(Error::Precondition(format!("{p} has rank 0 for n = {n}")));
    }
    Ok(tabs
        .into_iter()
        .map(|t| {
            let exponents = content(&t, n);
            ParameterMonomial { tableau: t, exponents }
        })
        .collect())
}

/// Integer weights per embedding label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub BTreeMap<String, Vec<i64>>);

impl WeightVector {
    pub fn single(label: &str, k: Vec<i64>) -> Self {
        WeightVector(BTreeMap::from([(label.to_string(), k)]))
    }

    /// Common length of the tuples, if there is one.
    pub fn len_common(&self) -> Result<usize> {
        let mut lens = self.0.values().map(Vec::len);
        let first = lens
            .next()
            .ok_or_else(|| Error::Precondition("weight vector has no embeddings".into()))?;
        if lens.any(|l| l != first) {
            return Err(Error::DimensionMismatch("weight tuples of different lengths".into()));
        }
        Ok(first)
    }

    /// Nonnegative and weakly decreasing for every label.
    pub fn is_classical(&self) -> bool {
        self.0
            .values()
            .all(|k| k.iter().all(|&x| x >= 0) && k.windows(2).all(|w| w[0] >= w[1]))
    }

    pub fn add(&self, other: &WeightVector) -> Result<WeightVector> {
        let mut out = BTreeMap::new();
        for (tau, k) in &self.0 {
            let l = other
                .0
                .get(tau)
                .filter(|l| l.len() == k.len())
                .ok_or_else(|| Error::DimensionMismatch(format!("label {tau} missing or of other length")))?;
            out.insert(tau.clone(), k.iter().zip(l).map(|(a, b)| a + b).collect());
        }
        if out.len() != other.0.len() {
            return Err(Error::DimensionMismatch("label sets differ".into()));
        }
        Ok(WeightVector(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightImage {
    /// `(S∘k)_T` in tableau order.
    pub tableau_order: WeightVector,
    /// The same values sorted decreasingly.
    pub sorted: WeightVector,
}

pub fn weight_image(p: &Partition, k: &WeightVector) -> Result<WeightImage> {
    let n = k.len_common()?;
    let contents: Vec<ContentVector> = enumerate_tableaux(p, n).iter().map(|t| content(t, n)).collect();
    let mut ordered = BTreeMap::new();
    let mut sorted = BTreeMap::new();
    for (tau, kt) in &k.0 {
        let img: Vec<i64> = contents
            .iter()
            .map(|c| c.0.iter().zip(kt).map(|(&e, &w)| e as i64 * w).sum())
            .collect();
        let mut s = img.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        ordered.insert(tau.clone(), img);
        sorted.insert(tau.clone(), s);
    }
    Ok(WeightImage {
        tableau_order: WeightVector(ordered),
        sorted: WeightVector(sorted),
    })
}

fn min_abs_first_difference(v: &[i64]) -> Option<i64> {
    v.windows(2).map(|w| (w[0] - w[1]).abs()).min()
}

fn min_abs_second_difference(v: &[i64]) -> Option<i64> {
    v.windows(3).map(|w| (w[0] - 2 * w[1] + w[2]).abs()).min()
}

/// `lhs >= rhs` with an empty minimum on either side counting as a pass.
fn at_least(lhs: Option<i64>, rhs: Option<i64>) -> bool {
    match (lhs, rhs) {
        (Some(l), Some(r)) => l >= r,
        _ => true,
    }
}

/// Outcome of the three inequalities for one embedding label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwtslEntry {
    pub max_image: i64,
    pub max_weight: i64,
    pub q: usize,
    pub min_gap_image: Option<i64>,
    pub min_gap_weight: Option<i64>,
    pub min_second_image: Option<i64>,
    pub min_second_weight: Option<i64>,
    pub bound_i: bool,
    pub gap_ii: bool,
    pub gap_iii: bool,
    /// (2.ii) and (2.iii) evaluated on the decreasingly sorted image.
    pub sorted_gap_ii: bool,
    pub sorted_gap_iii: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwtslReport {
    pub per_tau: BTreeMap<String, SwtslEntry>,
}

impl SwtslReport {
    pub fn bound_i(&self) -> bool {
        self.per_tau.values().all(|e| e.bound_i)
    }

    pub fn gap_ii(&self) -> bool {
        self.per_tau.values().all(|e| e.gap_ii)
    }

    pub fn gap_iii(&self) -> bool {
        self.per_tau.values().all(|e| e.gap_iii)
    }
}

pub fn swtsl_check(p: &Partition, k: &WeightVector) -> Result<SwtslReport> {
    if !k.is_classical() {
        return Err(Error::Precondition("weight is not classical".into()));
    }
    let img = weight_image(p, k)?;
    let q = p.size();
    let mut per_tau = BTreeMap::new();
    for (tau, kt) in &k.0 {
        let ordered = &img.tableau_order.0[tau];
        let sorted = &img.sorted.0[tau];
        let max_image = ordered.iter().map(|x| x.abs()).max().unwrap_or(0);
        let max_weight = kt.iter().map(|x| x.abs()).max().unwrap_or(0);
        let (gi, gw) = (min_abs_first_difference(ordered), min_abs_first_difference(kt));
        let (si, sw) = (min_abs_second_difference(ordered), min_abs_second_difference(kt));
        per_tau.insert(
            tau.clone(),
            SwtslEntry {
                max_image,
                max_weight,
                q,
                min_gap_image: gi,
                min_gap_weight: gw,
                min_second_image: si,
                min_second_weight: sw,
                bound_i: max_image <= q as i64 * max_weight,
                gap_ii: at_least(gi, gw),
                gap_iii: at_least(si, sw),
                sorted_gap_ii: at_least(min_abs_first_difference(sorted), gw),
                sorted_gap_iii: at_least(min_abs_second_difference(sorted), sw),
            },
        );
    }
    Ok(SwtslReport { per_tau })
}

/// Kernel of `𝕊^u` restricted to the diagonal torus `G_m^n`:
/// `⊕ μ_{d_i} × G_m^{free_rank}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelDescriptor {
    /// Nonzero invariant factors of the content matrix.
    pub invariant_factors: Vec<u64>,
    /// Dimension of the torus part of the kernel.
    pub free_rank: usize,
    /// `q(u)`, the order of the diagonal `μ_q`.
    pub diagonal_order: usize,
    /// The kernel is exactly `μ_q` embedded as scalars.
    pub is_diagonal_mu_q: bool,
    /// Set when the shape fails the genericity hypothesis.
    pub ast_violated: bool,
}

impl KernelDescriptor {
    /// Order of the finite kernel, `None` when it is positive-dimensional.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().map(|&d| BigInt::from(d)).product())
    }

    /// Strictly contains the diagonal `μ_q`.
    pub fn is_larger_than_diagonal(&self) -> bool {
        match self.order() {
            None => true,
            Some(o) => o > BigInt::from(self.diagonal_order),
        }
    }
}

pub fn content_matrix(p: &Partition, n: usize) -> Matrix<BigInt> {
    let tabs = enumerate_tableaux(p, n);
    let entries = tabs
        .iter()
        .flat_map(|t| content(t, n).0.into_iter().map(BigInt::from))
        .collect();
    Matrix::new(tabs.len(), n, entries).expect("one content row per tableau")
}

pub fn torus_kernel(p: &Partition, n: usize) -> Result<KernelDescriptor> {
    if n == 0 {
        return Err(Error::Precondition("ambient dimension must be positive".into()));
    }
    let factors = invariant_factors(&content_matrix(p, n))
        .into_iter()
        .map(|d| {
            d.to_u64()
                .ok_or_else(|| Error::InvariantBreach(format!("invariant factor {d} out of range")))
        })
        .collect::<Result<Vec<u64>>>()?;
    let free_rank = n - factors.len();
    let q = p.size();
    let cyclic = factors.iter().rev().skip(1).all(|&d| d == 1);
    let order: BigInt = factors.iter().map(|&d| BigInt::from(d)).product();
    Ok(KernelDescriptor {
        is_diagonal_mu_q: free_rank == 0 && cyclic && order == BigInt::from(q),
        invariant_factors: factors,
        free_rank,
        diagonal_order: q,
        ast_violated: !validate_ast(p, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parameters_of_sym_cube() {
        let e: Vec<Vec<usize>> = induced_parameters(&p(&[1, 1, 1]), 2)
            .unwrap()
            .into_iter()
            .map(|m| m.exponents.0)
            .collect();
        assert_eq!(e, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        let e: Vec<Vec<usize>> = induced_parameters(&p(&[2, 1]), 2)
            .unwrap()
            .into_iter()
            .map(|m| m.exponents.0)
            .collect();
        assert_eq!(e, vec![vec![2, 1], vec![1, 2]]);
        let det = induced_parameters(&p(&[3]), 3).unwrap();
        assert_eq!(det.len(), 1);
        assert_eq!(det[0].exponents.0, vec![1, 1, 1]);
    }

    #[test]
    fn weight_image_examples() {
        let img = weight_image(&p(&[1, 1, 1]), &WeightVector::single("t", vec![5, 0])).unwrap();
        assert_eq!(img.tableau_order.0["t"], vec![15, 10, 5, 0]);
        let img = weight_image(&p(&[2, 1]), &WeightVector::single("t", vec![2, 1, 0])).unwrap();
        assert_eq!(img.tableau_order.0["t"].len(), 8);
        assert!(img.sorted.0["t"].windows(2).all(|w| w[0] >= w[1]));
        assert!(img.tableau_order.0["t"].iter().all(|x| x.abs() <= 6));
    }

    #[test]
    fn swtsl_sym_cube() {
        let r = swtsl_check(&p(&[1, 1, 1]), &WeightVector::single("t", vec![5, 0])).unwrap();
        assert!(r.bound_i() && r.gap_ii() && r.gap_iii());
        let e = &r.per_tau["t"];
        assert_eq!((e.max_image, e.min_gap_image, e.min_gap_weight), (15, Some(5), Some(5)));
    }

    #[test]
    fn swtsl_repeated_content_fails_in_tableau_order() {
        let r = swtsl_check(&p(&[2, 1]), &WeightVector::single("t", vec![2, 1, 0])).unwrap();
        assert!(r.bound_i());
        assert!(!r.gap_ii());
    }

    #[test]
    fn swtsl_rejects_non_classical() {
        assert!(swtsl_check(&p(&[1]), &WeightVector::single("t", vec![0, 1])).is_err());
    }

    #[test]
    fn kernels() {
        let k = torus_kernel(&p(&[1, 1, 1]), 2).unwrap();
        assert_eq!(k.invariant_factors, vec![1, 3]);
        assert!(k.is_diagonal_mu_q);
        let k = torus_kernel(&p(&[1]), 3).unwrap();
        assert!(k.invariant_factors.iter().all(|&d| d == 1));
        assert!(k.is_diagonal_mu_q);
        let k = torus_kernel(&p(&[2, 1]), 3).unwrap();
        assert!(k.is_diagonal_mu_q && !k.ast_violated);
        let k = torus_kernel(&p(&[2, 2]), 2).unwrap();
        assert!(k.ast_violated && k.is_larger_than_diagonal());
    }
}
