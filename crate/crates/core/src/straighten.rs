//! Straightening of column-strict fillings into the semistandard basis.
//!
//! A filling whose columns strictly increase represents a pure tensor of
//! wedges in `⊗_a Λ^{u_a} V`. Its class in the Schur module is rewritten with
//! the Garnir relation between adjacent columns: if column `a` has
//! `x_b > y_b` against column `a+1`, the entries `x_b..x_end` of column `a`
//! and `y_1..y_b` of column `a+1` are one more than the length of column `a`,
//! so the alternating sum over their shuffles vanishes. Every non-identity
//! shuffle moves a strictly smaller entry into column `a`, so the rewritten
//! terms are strictly smaller in the column-major reading order and the
//! recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_tableaux, Partition, Tableau};
use crate::scalar::Scalar;

/// Sparse integer coordinates in a tableau basis.
pub type Coordinates = Arc<[(usize, BigInt)]>;

/// Linear combination of column-strict fillings of a fixed shape.
///
/// Keys are column-major reading words with strictly increasing columns; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TabloidExpansion<T> {
    shape: Partition,
    terms: BTreeMap<Vec<u8>, T>,
}

impl<T: Scalar> TabloidExpansion<T> {
    pub fn new(shape: Partition) -> Self {
        TabloidExpansion {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, T> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` times a column-strict filling given by its reading word.
    pub fn insert(&mut self, word: Vec<u8>, coeff: T) -> Result<()> {
        check_column_strict(&self.shape, &word)?;
        self.add(word, coeff);
        Ok(())
    }

    /// Adds an arbitrary filling: each column is sorted and the sign of the
    /// sorting permutation applied; a repeated entry in a column kills the term.
    pub fn insert_unsorted(&mut self, columns: &[Vec<u8>], coeff: T) -> Result<()> {
        if columns.len() != self.shape.len()
            || columns.iter().zip(self.shape.parts()).any(|(c, &l)| c.len() != l)
        {
            return Err(Error::DimensionMismatch(format!(
                "filling does not have shape {}",
                self.shape
            )));
        }
        let mut word = Vec::with_capacity(self.shape.size());
        let mut negative = false;
        for col in columns {
            let mut col = col.clone();
            match sort_with_sign(&mut col) {
                None => return Ok(()),
                Some(odd) => negative ^= odd,
            }
            word.extend_from_slice(&col);
        }
        let coeff = if negative { -coeff } else { coeff };
        self.add(word, coeff);
        Ok(())
    }

    fn add(&mut self, word: Vec<u8>, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }
}

/// Sorts ascending; returns `Some(parity is odd)` or `None` on a repeated entry.
pub(crate) fn sort_with_sign(col: &mut [u8]) -> Option<bool> {
    let mut odd = false;
    // insertion sort: parity = number of adjacent swaps
    for i in 1..col.len() {
        let mut j = i;
        while j > 0 && col[j - 1] > col[j] {
            col.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if col.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

fn check_column_strict(shape: &Partition, word: &[u8]) -> Result<()> {
    if word.len() != shape.size() {
        return Err(Error::DimensionMismatch(format!(
            "word of length {} for shape {shape}",
            word.len()
        )));
    }
    let off = shape.column_offsets();
    for (a, w) in off.windows(2).enumerate() {
        let col = &word[w[0]..w[1]];
        if col.contains(&0) || col.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::NotColumnStrict(format!("column {} is {:?}", a + 1, col)));
        }
    }
    Ok(())
}

/// Semistandard basis of one shape plus a memo of straightened fillings.
pub struct Straightener {
    shape: Partition,
    n: usize,
    offsets: Vec<usize>,
    basis: Vec<Tableau>,
    index: HashMap<Vec<u8>, usize>,
    cache: Mutex<HashMap<Vec<u8>, Coordinates>>,
}

impl Straightener {
    pub fn new(shape: Partition, n: usize) -> Self {
        let basis = enumerate_tableaux(&shape, n);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.word().to_vec(), i))
            .collect();
        let offsets = shape.column_offsets();
        Straightener {
            shape,
            n,
            offsets,
            basis,
            index,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn basis_index(&self, word: &[u8]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Coordinates of a column-strict filling in the semistandard basis.
    pub fn straighten_word(&self, word: &[u8]) -> Result<Coordinates> {
        check_column_strict(&self.shape, word)?;
        if let Some(&x) = word.iter().max() {
            if x as usize > self.n {
                return Err(Error::Precondition(format!(
                    "entry {x} exceeds the ambient dimension {}",
                    self.n
                )));
            }
        }
        Ok(self.straighten_checked(word))
    }

    fn straighten_checked(&self, word: &[u8]) -> Coordinates {
        if let Some(&i) = self.index.get(word) {
            return Arc::from(vec![(i, BigInt::one())]);
        }
        if let Some(hit) = self.cache.lock().unwrap().get(word) {
            return hit.clone();
        }
        let result = self.garnir(word);
        self.cache
            .lock()
            .unwrap()
            .insert(word.to_vec(), result.clone());
        result
    }

    /// First row violation `(a, b)`: entry `b` of column `a` exceeds entry `b`
    /// of column `a + 1` (0-based).
    fn violation(&self, word: &[u8]) -> Option<(usize, usize)> {
        let parts = self.shape.parts();
        for a in 0..parts.len().saturating_sub(1) {
            let (l, r) = (self.offsets[a], self.offsets[a + 1]);
            for b in 0..parts[a + 1] {
                if word[l + b] > word[r + b] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn garnir(&self, word: &[u8]) -> Coordinates {
        let Some((a, b)) = self.violation(word) else {
            // column-strict and row-weak but absent from the basis: impossible
            unreachable!("semistandard word missing from basis");
        };
        let parts = self.shape.parts();
        let left = self.offsets[a];
        let right = self.offsets[a + 1];
        let left_len = parts[a];

        // positions taking part in the shuffle: bottom of column a, top of column a+1
        let positions: Vec<usize> = (left + b..left + left_len).chain(right..=right + b).collect();
        let values: Vec<u8> = positions.iter().map(|&p| word[p]).collect();
        let slots = left_len - b;

        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for chosen in combinations(values.len(), slots) {
            if chosen.iter().enumerate().all(|(i, &c)| i == c) {
                continue; // identity shuffle is the term being rewritten
            }
            let mut order: Vec<usize> = chosen.clone();
            order.extend((0..values.len()).filter(|i| !chosen.contains(i)));
            let mut negative = permutation_is_odd(&order);

            let mut w = word.to_vec();
            for (slot, &src) in positions.iter().zip(order.iter()) {
                w[*slot] = values[src];
            }
            let mut dead = false;
            for col in [a, a + 1] {
                let (s, e) = (self.offsets[col], self.offsets[col + 1]);
                match sort_with_sign(&mut w[s..e]) {
                    None => {
                        dead = true;
                        break;
                    }
                    Some(odd) => negative ^= odd,
                }
            }
            if dead {
                continue;
            }
            debug_assert!(w < word.to_vec());
            // v = -Σ_{σ≠id} sgn(σ) σv
            for (idx, c) in self.straighten_checked(&w).iter() {
                let e = acc.entry(*idx).or_insert_with(BigInt::zero);
                if negative {
                    *e += c;
                } else {
                    *e -= c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Arc::from(acc.into_iter().collect::<Vec<_>>())
    }

    /// Coordinates of a whole expansion, indexed like [`Straightener::basis`].
    pub fn straighten<T: Scalar>(&self, x: &TabloidExpansion<T>) -> Result<Vec<T>> {
        if x.shape() != &self.shape {
            return Err(Error::DimensionMismatch(format!(
                "expansion of shape {} given to straightener of shape {}",
                x.shape(),
                self.shape
            )));
        }
        let mut out = vec![T::zero(); self.basis.len()];
        for (word, coeff) in x.terms() {
            for (idx, c) in self.straighten_word(word)?.iter() {
                add_scaled(&mut out[*idx], coeff, c);
            }
        }
        Ok(out)
    }
}

/// `slot += coeff * c` with fast paths for the ubiquitous `c = ±1`.
#[inline]
pub(crate) fn add_scaled<T: Scalar>(slot: &mut T, coeff: &T, c: &BigInt) {
    let one = BigInt::one();
    let v = if *c == one {
        slot.clone() + coeff.clone()
    } else if *c == -one {
        slot.clone() - coeff.clone()
    } else {
        slot.clone() + coeff.clone() * T::from_bigint(c)
    };
    *slot = v;
}

/// Straightens `x` into the ordered basis of `enumerate_tableaux(p, n)`.
pub fn straighten<T: Scalar>(x: &TabloidExpansion<T>, p: &Partition, n: usize) -> Result<Vec<T>> {
    Straightener::new(p.clone(), n).straighten(x)
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
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
    fn semistandard_term_is_a_unit_vector() {
        let s = Straightener::new(p(&[2, 1]), 3);
        let mut x = TabloidExpansion::new(p(&[2, 1]));
        x.insert(vec![1, 3, 2], q(1)).unwrap();
        let v = s.straighten(&x).unwrap();
        let idx = s.basis_index(&[1, 3, 2]).unwrap();
        for (i, c) in v.iter().enumerate() {
            assert_eq!(*c, if i == idx { q(1) } else { q(0) });
        }
    }

    #[test]
    fn hook_shape_exchange() {
        // ((2,3),(1)) = e_((1,3),(2)) - e_((1,2),(3))
        let shape = p(&[2, 1]);
        let s = Straightener::new(shape.clone(), 3);
        let mut x = TabloidExpansion::new(shape.clone());
        x.insert(vec![2, 3, 1], q(1)).unwrap();
        let v = straighten(&x, &shape, 3).unwrap();
        let plus = s.basis_index(&[1, 3, 2]).unwrap();
        let minus = s.basis_index(&[1, 2, 3]).unwrap();
        for (i, c) in v.iter().enumerate() {
            let expect = if i == plus {
                q(1)
            } else if i == minus {
                q(-1)
            } else {
                q(0)
            };
            assert_eq!(*c, expect, "coordinate {i}");
        }
    }

    #[test]
    fn repeated_entry_in_column_vanishes() {
        let mut x = TabloidExpansion::<BigRational>::new(p(&[2, 1]));
        x.insert_unsorted(&[vec![2, 2], vec![1]], q(5)).unwrap();
        assert!(x.is_empty());
        let v = straighten(&x, &p(&[2, 1]), 3).unwrap();
        assert!(v.iter().all(|c| *c == q(0)));
    }

    #[test]
    fn unsorted_columns_pick_up_the_sign() {
        let mut x = TabloidExpansion::<BigRational>::new(p(&[2, 1]));
        x.insert_unsorted(&[vec![3, 1], vec![2]], q(1)).unwrap();
        assert_eq!(x.terms().get(&vec![1, 3, 2]), Some(&q(-1)));
    }

    #[test]
    fn non_column_strict_key_is_rejected() {
        let mut x = TabloidExpansion::<BigRational>::new(p(&[2, 1]));
        assert!(matches!(
            x.insert(vec![3, 1, 2], q(1)),
            Err(Error::NotColumnStrict(_))
        ));
        let s = Straightener::new(p(&[2, 1]), 3);
        assert!(s.straighten_word(&[2, 2, 1]).is_err());
    }

    #[test]
    fn single_row_straightening_is_sorting() {
        let shape = p(&[1, 1, 1]);
        let s = Straightener::new(shape, 2);
        let c = s.straighten_word(&[2, 1, 1]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(s.basis()[c[0].0].word(), &[1, 1, 2]);
        assert_eq!(c[0].1, BigInt::one());
    }

    #[test]
    fn equal_columns_commute() {
        let shape = p(&[2, 2]);
        let s = Straightener::new(shape, 4);
        let c = s.straighten_word(&[2, 4, 1, 3]).unwrap();
        let d = s.straighten_word(&[1, 3, 2, 4]).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
        let mut c = [3u8, 1, 2];
        assert_eq!(sort_with_sign(&mut c), Some(false));
        assert_eq!(c, [1, 2, 3]);
    }
}
