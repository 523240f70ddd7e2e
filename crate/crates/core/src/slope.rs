//! Slopes of trianguline points, their behavior under a change of
//! triangulation, and the permutation count behind the `r!` bound.
//!
//! A point is modeled by the valuations of its Frobenius eigenvalues (in
//! triangulation order), its Hodge-Tate weights and the valuations
//! `c_i = v(δ_B(γ_i))`. The default `c_i = i(n - i)` assumes `v(ϖ) = 1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TriangulinePoint<T> {
    phi_val: Vec<T>,
    ht_weights: Vec<i64>,
    norm_const: Vec<T>,
}

impl<T: Scalar> TriangulinePoint<T> {
    /// `norm_const = None` selects [`default_norm_const`].
    pub fn new(phi_val: Vec<T>, ht_weights: Vec<i64>, norm_const: Option<Vec<T>>) -> Result<Self> {
        let n = phi_val.len();
        if n == 0 {
            return Err(Error::Precondition("a point needs rank at least 1".into()));
        }
        if ht_weights.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} Hodge-Tate weights for rank {n}",
                ht_weights.len()
            )));
        }
        if ht_weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "Hodge-Tate weights {ht_weights:?} are not decreasing"
            )));
        }
        let norm_const = norm_const.unwrap_or_else(|| default_norm_const(n));
        if norm_const.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} normalization constants for rank {n}",
                norm_const.len()
            )));
        }
        Ok(TriangulinePoint { phi_val, ht_weights, norm_const })
    }

    pub fn rank(&self) -> usize {
        self.phi_val.len()
    }

    pub fn phi_val(&self) -> &[T] {
        &self.phi_val
    }

    pub fn ht_weights(&self) -> &[i64] {
        &self.ht_weights
    }

    pub fn norm_const(&self) -> &[T] {
        &self.norm_const
    }

    pub fn with_norm_const(&self, norm_const: Vec<T>) -> Result<Self> {
        TriangulinePoint::new(self.phi_val.clone(), self.ht_weights.clone(), Some(norm_const))
    }

    /// The same point with Frobenius valuations reordered: `φ'_i = φ_{σ(i)}`.
    pub fn permute_phi(&self, sigma: &Permutation) -> Result<Self> {
        sigma.check_len(self.rank())?;
        let phi = (0..self.rank()).map(|i| self.phi_val[sigma.apply(i)].clone()).collect();
        Ok(TriangulinePoint {
            phi_val: phi,
            ht_weights: self.ht_weights.clone(),
            norm_const: self.norm_const.clone(),
        })
    }
}

/// `c_i = i(n - i)` for `i = 1..n`.
pub fn default_norm_const<T: Scalar>(n: usize) -> Vec<T> {
    (1..=n).map(|i| T::from_i64((i * (n - i)) as i64)).collect()
}

/// `slo_i = v(φ_i) - c_i - k_i`.
pub fn slopes<T: Scalar>(pt: &TriangulinePoint<T>) -> Vec<T> {
    (0..pt.rank())
        .map(|i| pt.phi_val[i].clone() - pt.norm_const[i].clone() - T::from_i64(pt.ht_weights[i]))
        .collect()
}

/// Slopes after re-triangulating by `σ`:
/// `slo'_i = slo_{σ(i)} + k_{σ(i)} - k_i + c_{σ(i)} - c_i`.
///
/// The `c` terms make this agree with [`slopes`] of [`TriangulinePoint::permute_phi`]
/// for any normalization; they vanish when `c` is constant.
pub fn retriangulate_slopes<T: Scalar>(pt: &TriangulinePoint<T>, sigma: &Permutation) -> Result<Vec<T>> {
    sigma.check_len(pt.rank())?;
    let slo = slopes(pt);
    Ok((0..pt.rank())
        .map(|i| {
            let s = sigma.apply(i);
            slo[s].clone() + T::from_i64(pt.ht_weights[s] - pt.ht_weights[i]) + pt.norm_const[s].clone()
                - pt.norm_const[i].clone()
        })
        .collect())
}

/// Permutation of `{0..n-1}`; serialized 1-based as the list `σ(1), …, σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}: entries start at 1")));
        }
        Permutation::from_zero_based(images.iter().map(|&i| i - 1).collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.0[i] == i
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} letters applied to rank {n}",
                self.len()
            )));
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// All permutations of `{0..n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// The weight-difference genericity condition between `x` and `y`.
///
/// For every quadruple `(i1, i2, i1', i2')`:
/// * a coincidence `k_{i1,x} - k_{i2,x} = k_{i1',y} - k_{i2',y}` that is not
///   the trivial `0 = 0` must only involve indices of `I`;
/// * for `a, b ∈ I` the difference `k_a - k_b` is the same at `x` and `y`.
///
/// Indices in `I` are 0-based here.
pub fn kdiff_holds<T: Scalar>(x: &TriangulinePoint<T>, y: &TriangulinePoint<T>, i_set: &BTreeSet<usize>) -> Result<bool> {
    let n = x.rank();
    if y.rank() != n {
        return Err(Error::DimensionMismatch(format!("ranks {n} and {} differ", y.rank())));
    }
    if let Some(&bad) = i_set.iter().find(|&&i| i >= n) {
        return Err(Error::Precondition(format!("index {} outside 1..{n}", bad + 1)));
    }
    let (kx, ky) = (x.ht_weights(), y.ht_weights());
    for a in 0..n {
        for b in 0..n {
            let dx = kx[a] - kx[b];
            for c in 0..n {
                for d in 0..n {
                    let equal = dx == ky[c] - ky[d];
                    let trivial = a == b && c == d;
                    let inside = [a, b, c, d].iter().all(|i| i_set.contains(i));
                    if equal && !trivial && !inside {
                        return Ok(false);
                    }
                    if !equal && a == c && b == d && inside {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Points sharing their weights at the constant positions `I` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec<T> {
    n: usize,
    const_indices: BTreeSet<usize>,
    points: Vec<TriangulinePoint<T>>,
}

impl<T: Scalar> FamilySpec<T> {
    pub fn new(n: usize, const_indices: BTreeSet<usize>, points: Vec<TriangulinePoint<T>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Precondition("a family needs at least two points".into()));
        }
        if let Some(p) = points.iter().find(|p| p.rank() != n) {
            return Err(Error::DimensionMismatch(format!("point of rank {} in a rank {n} family", p.rank())));
        }
        if let Some(&bad) = const_indices.iter().find(|&&i| i >= n) {
            return Err(Error::Precondition(format!("constant index {} outside 1..{n}", bad + 1)));
        }
        let first = points[0].ht_weights();
        for p in &points[1..] {
            if let Some(&i) = const_indices.iter().find(|&&i| p.ht_weights()[i] != first[i]) {
                return Err(Error::Precondition(format!(
                    "weights differ at constant position {}",
                    i + 1
                )));
            }
        }
        Ok(FamilySpec { n, const_indices, points })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn const_indices(&self) -> &BTreeSet<usize> {
        &self.const_indices
    }

    pub fn points(&self) -> &[TriangulinePoint<T>] {
        &self.points
    }

    /// `r = |I|`.
    pub fn constant_weights(&self) -> usize {
        self.const_indices.len()
    }
}

/// Permutations `σ` with `k_{σ(i),x} - k_{i,x} = k_{σ(i),y} - k_{i,y}` for
/// all `i`, where `x` is the first point and `y` ranges over the others.
/// Requires the genericity condition between the first two points.
pub fn admissible_permutations<T: Scalar>(fam: &FamilySpec<T>) -> Result<Vec<Permutation>> {
    let x = &fam.points[0];
    if !kdiff_holds(x, &fam.points[1], &fam.const_indices)? {
        return Err(Error::Precondition(
            "weight-difference condition fails for the first two points".into(),
        ));
    }
    let kx = x.ht_weights();
    Ok(all_permutations(fam.n)
        .into_iter()
        .filter(|s| {
            fam.points[1..].iter().all(|y| {
                let ky = y.ht_weights();
                (0..fam.n).all(|i| kx[s.apply(i)] - kx[i] == ky[s.apply(i)] - ky[i])
            })
        })
        .collect())
}

pub fn factorial(r: usize) -> u64 {
    (1..=r as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn pt(phi: &[i64], k: &[i64], c: Option<&[i64]>) -> TriangulinePoint<BigRational> {
        TriangulinePoint::new(qs(phi), k.to_vec(), c.map(qs)).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn default_constants() {
        assert_eq!(default_norm_const::<BigRational>(2), qs(&[1, 0]));
        assert_eq!(default_norm_const::<BigRational>(3), qs(&[2, 2, 0]));
        assert_eq!(default_norm_const::<BigRational>(1), qs(&[0]));
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slopes(&pt(&[0, 1], &[1, 0], Some(&[1, 0]))), qs(&[-2, 1]));
        assert_eq!(slopes(&pt(&[0, 0], &[0, 0], Some(&[0, 0]))), qs(&[0, 0]));
        assert_eq!(slopes(&pt(&[0, 1, 2], &[2, 1, 0], Some(&[2, 2, 0]))), qs(&[-4, -2, 2]));
    }

    #[test]
    fn retriangulation_matches_permuted_point() {
        let x = pt(&[0, 1], &[1, 0], Some(&[1, 0]));
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let r = retriangulate_slopes(&x, &swap).unwrap();
        assert_eq!(r, slopes(&x.permute_phi(&swap).unwrap()));
        assert_eq!(r, qs(&[-1, 0]));
        let id = Permutation::identity(2);
        assert_eq!(retriangulate_slopes(&x, &id).unwrap(), slopes(&x));
        assert!(retriangulate_slopes(&x, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn constant_normalization_recovers_the_bare_formula() {
        let x = pt(&[0, 1], &[1, 0], Some(&[0, 0]));
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        let slo = slopes(&x);
        let bare: Vec<BigRational> = (0..2)
            .map(|i| {
                let s = swap.apply(i);
                slo[s].clone() + q(x.ht_weights()[s] - x.ht_weights()[i])
            })
            .collect();
        assert_eq!(retriangulate_slopes(&x, &swap).unwrap(), bare);
    }

    #[test]
    fn permutation_parsing() {
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[3, 1]).is_err());
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn kdiff_examples() {
        let x = pt(&[0, 0, 0], &[10, 3, 0], None);
        assert!(kdiff_holds(&x, &x, &set(&[0, 1, 2])).unwrap());
        let a = pt(&[0, 0], &[1, 0], None);
        assert!(!kdiff_holds(&a, &a, &set(&[])).unwrap());
        let y = pt(&[0, 0, 0], &[10, 4, 0], None);
        // k_1 - k_3 = 10 at both points while 3 is not constant
        assert!(!kdiff_holds(&x, &y, &set(&[0])).unwrap());
        let y = pt(&[0, 0, 0], &[10, 5, 1], None);
        assert!(kdiff_holds(&x, &y, &set(&[0])).unwrap());
    }

    #[test]
    fn admissible_counts() {
        let x = pt(&[0, 0, 0], &[10, 3, 0], None);
        let y = pt(&[0, 0, 0], &[17, 11, 5], None);
        let fam = FamilySpec::new(3, set(&[]), vec![x, y]).unwrap();
        assert_eq!(admissible_permutations(&fam).unwrap(), vec![Permutation::identity(3)]);

        let x = pt(&[0, 0, 0, 0], &[20, 15, 7, 1], None);
        let y = pt(&[0, 0, 0, 0], &[20, 15, 11, 0], None);
        let fam = FamilySpec::new(4, set(&[0, 1]), vec![x, y]).unwrap();
        let perms = admissible_permutations(&fam).unwrap();
        assert_eq!(perms.len(), 2);
        assert!(perms.iter().all(|s| s.fixes(2) && s.fixes(3)));

        let one = pt(&[0], &[3], None);
        let fam = FamilySpec::new(1, set(&[]), vec![one.clone(), one]).unwrap();
        assert_eq!(admissible_permutations(&fam).unwrap(), vec![Permutation::identity(1)]);
    }

    #[test]
    fn family_validation() {
        let x = pt(&[0, 0], &[5, 1], None);
        let y = pt(&[0, 0], &[6, 1], None);
        assert!(FamilySpec::new(2, set(&[0]), vec![x.clone(), y]).is_err());
        assert!(FamilySpec::new(2, set(&[]), vec![x]).is_err());
    }
}
