//! Characters of Schur modules as integer polynomials, and decompositions of
//! products by leading-term subtraction.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{content, enumerate_tableaux, rank, Partition};
use crate::scalar::{pow, Scalar};

/// Integer polynomial in `n` variables, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, coeff: BigInt) {
        debug_assert_eq!(exponent.len(), self.n);
        match self.terms.entry(exponent) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if !coeff.is_zero() {
                    slot.insert(coeff);
                }
            }
        }
    }

    /// Lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "polynomials in different numbers of variables");
        let mut out = Poly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `self - c · other`.
    pub fn sub_scaled(&mut self, other: &Poly, c: &BigInt) {
        for (e, x) in &other.terms {
            self.add_term(e.clone(), -(x * c));
        }
    }

    pub fn eval<T: Scalar>(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = T::from_bigint(c);
            for (xi, &k) in x.iter().zip(e) {
                term = term * pow(xi, k as usize);
            }
            acc = acc + term;
        }
        acc
    }
}

/// Character of `𝕊^p` on the diagonal torus of `GL_n`.
pub fn character(p: &Partition, n: usize) -> Poly {
    let mut poly = Poly::zero(n);
    for t in enumerate_tableaux(p, n) {
        let e = content(&t, n).0.into_iter().map(|c| c as u32).collect();
        poly.add_term(e, BigInt::from(1));
    }
    poly
}

/// `Σ_T Π_i x_i^{content(T)_i}`.
pub fn schur_polynomial<T: Scalar>(p: &Partition, x: &[T]) -> T {
    character(p, x.len()).eval(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub partition: Partition,
    pub multiplicity: u64,
}

/// Multiset of Schur modules of `GL_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition", into = "RawDecomposition")]
pub struct SchurDecomposition {
    n: usize,
    terms: BTreeMap<Partition, u64>,
}

#[derive(Serialize, Deserialize)]
struct RawDecomposition {
    n: usize,
    terms: Vec<DecompositionTerm>,
}

impl From<SchurDecomposition> for RawDecomposition {
    fn from(d: SchurDecomposition) -> Self {
        RawDecomposition {
            n: d.n,
            terms: d
                .terms
                .into_iter()
                .map(|(partition, multiplicity)| DecompositionTerm { partition, multiplicity })
                .collect(),
        }
    }
}

impl TryFrom<RawDecomposition> for SchurDecomposition {
    type Error = Error;

    fn try_from(raw: RawDecomposition) -> Result<Self> {
        let mut d = SchurDecomposition::new(raw.n);
        for t in raw.terms {
            if t.multiplicity == 0 {
                return Err(Error::Parse(format!("zero multiplicity for {}", t.partition)));
            }
            if t.partition.longest_column() > raw.n {
                return Err(Error::Parse(format!("{} vanishes for n = {}", t.partition, raw.n)));
            }
            d.add(t.partition, t.multiplicity);
        }
        Ok(d)
    }
}

impl SchurDecomposition {
    pub fn new(n: usize) -> Self {
        SchurDecomposition { n, terms: BTreeMap::new() }
    }

    pub fn dimension_n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, p: &Partition) -> u64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn add(&mut self, p: Partition, mult: u64) {
        *self.terms.entry(p).or_insert(0) += mult;
    }

    /// `Σ mult · r_v(n)`.
    pub fn dimension(&self) -> u64 {
        self.terms
            .iter()
            .map(|(p, m)| m * rank(p, self.n) as u64)
            .sum()
    }

    pub fn character(&self) -> Poly {
        let mut poly = Poly::zero(self.n);
        for (p, m) in &self.terms {
            poly.sub_scaled(&character(p, self.n), &-BigInt::from(*m));
        }
        poly
    }

    pub fn evaluate<T: Scalar>(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (p, m)| {
            acc + T::from_i64(*m as i64) * schur_polynomial(p, x)
        })
    }
}

/// Splits a torus character into Schur characters.
///
/// The lexicographically leading monomial of a character is a dominant
/// weight; its exponent tuple lists the row lengths of the leading summand.
/// Subtracting that summand's character must leave only nonnegative
/// coefficients; anything else is reported as an invariant breach.
pub fn decompose_character(poly: &Poly) -> Result<SchurDecomposition> {
    let n = poly.variables();
    let mut rest = poly.clone();
    let mut out = SchurDecomposition::new(n);
    if let Some((e, c)) = rest.terms().iter().find(|(_, c)| c.is_negative()) {
        return Err(Error::InvariantBreach(format!(
            "character has negative coefficient {c} at {e:?}"
        )));
    }
    while let Some((lead, coeff)) = rest.leading().map(|(e, c)| (e.clone(), c.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvariantBreach(format!(
                "leading exponent {lead:?} is not dominant"
            )));
        }
        let mult = coeff
            .to_u64()
            .ok_or_else(|| Error::InvariantBreach(format!("multiplicity {coeff} out of range")))?;
        let rows: Vec<usize> = lead.iter().map(|&k| k as usize).collect();
        let shape = Partition::from_row_lengths(&rows)
            .map_err(|e| Error::InvariantBreach(format!("leading exponent {lead:?}: {e}")))?;
        let chi = character(&shape, n);
        rest.sub_scaled(&chi, &BigInt::from(mult));
        if let Some((e, c)) = rest.terms().iter().find(|(_, c)| c.is_negative()) {
            return Err(Error::InvariantBreach(format!(
                "negative coefficient {c} at {e:?} after removing {mult} x {shape}"
            )));
        }
        out.add(shape, mult);
    }
    Ok(out)
}

/// `𝕊^{p1} ⊗ 𝕊^{p2}` for `GL_n`.
pub fn product_decompose(p1: &Partition, p2: &Partition, n: usize) -> Result<SchurDecomposition> {
    if n == 0 {
        return Err(Error::Precondition("ambient dimension must be positive".into()));
    }
    let d = decompose_character(&character(p1, n).mul(&character(p2, n)))?;
    let expect = rank(p1, n) as u64 * rank(p2, n) as u64;
    if d.dimension() != expect {
        return Err(Error::InvariantBreach(format!(
            "dimension identity failed: {} != {expect}",
            d.dimension()
        )));
    }
    Ok(d)
}

/// Tensor with the standard representation, by adding one box in every
/// admissible way.
pub fn pieri_add_box(p: &Partition, n: usize) -> SchurDecomposition {
    let mut out = SchurDecomposition::new(n);
    if p.longest_column() > n {
        return out;
    }
    let parts = p.parts();
    for a in 0..=parts.len() {
        let mut next = parts.to_vec();
        if a == parts.len() {
            next.push(1);
        } else {
            if a > 0 && parts[a - 1] == parts[a] {
                continue;
            }
            next[a] += 1;
        }
        if next[0] > n {
            continue;
        }
        out.add(Partition::new(next).expect("adding a corner box keeps a partition"), 1);
    }
    out
}

/// `Sym^{q-1} ⊗ Std` for `GL_n`, cross-checked against the one-box rule.
pub fn sym_tensor_std_decompose(q: usize, n: usize) -> Result<SchurDecomposition> {
    if q < 2 || n < 2 {
        return Err(Error::Precondition(format!("need q >= 2 and n >= 2, got q = {q}, n = {n}")));
    }
    let sym = Partition::single_row(q - 1)?;
    let d = product_decompose(&sym, &Partition::single_column(1)?, n)?;
    let pieri = pieri_add_box(&sym, n);
    if d != pieri {
        return Err(Error::InvariantBreach(format!(
            "character subtraction and the one-box rule disagree for q = {q}, n = {n}"
        )));
    }
    Ok(d)
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

    #[test]
    fn schur_polynomial_examples() {
        assert_eq!(schur_polynomial(&p(&[1, 1, 1]), &[q(1), q(1)]), q(4));
        assert_eq!(schur_polynomial(&p(&[2]), &[q(1), q(2), q(3)]), q(11));
        assert_eq!(schur_polynomial(&p(&[2, 1]), &[q(1), q(1), q(1)]), q(8));
    }

    #[test]
    fn std_squared() {
        let d = product_decompose(&p(&[1]), &p(&[1]), 2).unwrap();
        assert_eq!(d.multiplicity(&p(&[1, 1])), 1);
        assert_eq!(d.multiplicity(&p(&[2])), 1);
        assert_eq!(d.terms().len(), 2);
    }

    #[test]
    fn column_times_box() {
        let d = product_decompose(&p(&[2]), &p(&[1]), 3).unwrap();
        assert_eq!(d.multiplicity(&p(&[3])), 1);
        assert_eq!(d.multiplicity(&p(&[2, 1])), 1);
        assert_eq!(d.dimension(), 9);
    }

    #[test]
    fn sym_square_squared_in_two_variables() {
        let d = product_decompose(&p(&[1, 1]), &p(&[1, 1]), 2).unwrap();
        assert_eq!(d.dimension(), 9);
        assert_eq!(d.multiplicity(&p(&[1, 1, 1, 1])), 1);
        assert_eq!(d.multiplicity(&p(&[2, 1, 1])), 1);
        assert_eq!(d.multiplicity(&p(&[2, 2])), 1);
    }

    #[test]
    fn sym_tensor_std_examples() {
        let d = sym_tensor_std_decompose(3, 3).unwrap();
        assert_eq!(d.multiplicity(&p(&[1, 1, 1])), 1);
        assert_eq!(d.multiplicity(&p(&[2, 1])), 1);
        assert_eq!(d.dimension(), 18);
        let d = sym_tensor_std_decompose(4, 2).unwrap();
        assert_eq!(d.dimension(), 8);
        assert_eq!(d.multiplicity(&p(&[2, 1, 1])), 1);
    }

    #[test]
    fn negative_coefficients_are_breaches() {
        let mut poly = Poly::zero(2);
        poly.add_term(vec![1, 0], BigInt::from(1));
        assert!(decompose_character(&poly).unwrap_err().is_invariant_breach());
        let mut poly = Poly::zero(2);
        poly.add_term(vec![0, 1], BigInt::from(-1));
        assert!(decompose_character(&poly).unwrap_err().is_invariant_breach());
    }

    #[test]
    fn serde_shape() {
        let d = product_decompose(&p(&[1]), &p(&[1]), 2).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"partition":[1,1],"multiplicity":1},{"partition":[2],"multiplicity":1}]}"#
        );
        let back: SchurDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
