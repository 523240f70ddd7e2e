//! Partitions in the column convention, semistandard tableaux and their order.
//!
//! A partition `u = (u_1 >= ... >= u_r)` lists the *column* lengths of its
//! Young diagram. Entry `(a, b)` of a tableau is the `b`-th entry from the top
//! of column `a`, both 1-based. Tableaux are stored as their column-major
//! reading word, and the basis order is lexicographic order on that word.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing tuple of positive column lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("partition must have at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}: parts must be positive")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}: parts must be weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Builds the partition whose Young diagram has the given row lengths.
    pub fn from_row_lengths(rows: &[usize]) -> Result<Self> {
        let rows: Vec<usize> = rows.iter().copied().filter(|&x| x > 0).collect();
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{rows:?}: row lengths must be weakly decreasing")));
        }
        Partition::new(conjugate(&rows))
    }

    /// `(1, ..., 1)`: one row of length `q`, i.e. `Sym^q`.
    pub fn single_row(q: usize) -> Result<Self> {
        Partition::new(vec![1; q])
    }

    /// A single column of length `q`, i.e. `Λ^q`.
    pub fn single_column(q: usize) -> Result<Self> {
        Partition::new(vec![q])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `q(u)`: total number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `r(u)`: number of columns.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// `u_1`, the length of the first (longest) column.
    pub fn longest_column(&self) -> usize {
        self.parts[0]
    }

    /// Row lengths of the diagram, top to bottom.
    pub fn row_lengths(&self) -> Vec<usize> {
        conjugate(&self.parts)
    }

    pub fn is_rectangular(&self) -> bool {
        self.parts.iter().all(|&p| p == self.parts[0])
    }

    /// Prepends `k` columns of length `n`, realizing the twist by `det^k`.
    pub fn det_twist(&self, n: usize, k: usize) -> Result<Self> {
        if self.longest_column() > n {
            return Err(Error::Precondition(format!(
                "cannot prepend columns of length {n} to {self}"
            )));
        }
        let mut parts = vec![n; k];
        parts.extend_from_slice(&self.parts);
        Partition::new(parts)
    }

    /// Start of column `a` (0-based) inside the column-major reading word.
    pub(crate) fn column_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = 0;
        off.push(0);
        for &p in &self.parts {
            acc += p;
            off.push(acc);
        }
        off
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Conjugate of a weakly decreasing tuple (columns <-> rows).
pub fn conjugate(lengths: &[usize]) -> Vec<usize> {
    let top = lengths.first().copied().unwrap_or(0);
    (1..=top)
        .map(|b| lengths.iter().take_while(|&&l| l >= b).count())
        .collect()
}

/// The genericity hypothesis on `(u, n)`.
///
/// Fails when the longest column exceeds `n` (the functor vanishes) or when
/// all columns have the same length (rectangular shapes, which include the
/// determinant powers).
pub fn validate_ast(p: &Partition, n: usize) -> bool {
    !(p.longest_column() > n || p.is_rectangular())
}

/// Semistandard filling stored as its column-major reading word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    word: Vec<u8>,
}

impl Tableau {
    /// Validates a filling given column by column (top to bottom).
    pub fn from_columns(columns: &[Vec<usize>]) -> Result<Self> {
        let shape = Partition::new(columns.iter().map(Vec::len).collect())?;
        let mut word = Vec::with_capacity(shape.size());
        for col in columns {
            for &x in col {
                if x == 0 || x > u8::MAX as usize {
                    return Err(Error::Precondition(format!("tableau entry {x} out of range")));
                }
                word.push(x as u8);
            }
        }
        let t = Tableau { shape, word };
        t.check_semistandard()?;
        Ok(t)
    }

    pub(crate) fn from_word_unchecked(shape: Partition, word: Vec<u8>) -> Self {
        Tableau { shape, word }
    }

    fn check_semistandard(&self) -> Result<()> {
        let cols = self.columns();
        for (a, col) in cols.iter().enumerate() {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotColumnStrict(format!("column {} of {self}", a + 1)));
            }
            if a > 0 {
                let left = cols[a - 1];
                if col.iter().zip(left.iter()).any(|(r, l)| l > r) {
                    return Err(Error::Precondition(format!(
                        "rows of {self} are not weakly increasing at column {}",
                        a + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Column-major reading word.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn columns(&self) -> Vec<&[u8]> {
        let off = self.shape.column_offsets();
        off.windows(2).map(|w| &self.word[w[0]..w[1]]).collect()
    }

    pub fn columns_usize(&self) -> Vec<Vec<usize>> {
        self.columns()
            .into_iter()
            .map(|c| c.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Entry in column `a`, position `b` from the top (both 1-based).
    pub fn entry(&self, a: usize, b: usize) -> Option<usize> {
        let off = self.shape.column_offsets();
        if a == 0 || a > self.shape.len() || b == 0 || b > self.shape.parts()[a - 1] {
            return None;
        }
        Some(self.word[off[a - 1] + b - 1] as usize)
    }

    pub fn max_entry(&self) -> usize {
        self.word.iter().copied().max().unwrap_or(0) as usize
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tableau {
    /// Basis order: first differing entry in column-major traversal decides.
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .cmp(&other.word)
            .then_with(|| self.shape.cmp(&other.shape))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.columns().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.columns_usize().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cols = Vec::<Vec<usize>>::deserialize(d)?;
        Tableau::from_columns(&cols).map_err(serde::de::Error::custom)
    }
}

/// Multiplicity of each symbol `1..=n` in a tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(pub Vec<usize>);

impl ContentVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All semistandard tableaux of shape `p` with entries in `1..=n`, in basis order.
pub fn enumerate_tableaux(p: &Partition, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    if n == 0 || p.longest_column() > n || n > u8::MAX as usize {
        return out;
    }
    let parts = p.parts().to_vec();
    let off = p.column_offsets();
    // cell order = word order; cell k sits in column col_of[k], row row_of[k]
    let mut col_of = Vec::with_capacity(p.size());
    let mut row_of = Vec::with_capacity(p.size());
    for (a, &len) in parts.iter().enumerate() {
        for b in 0..len {
            col_of.push(a);
            row_of.push(b);
        }
    }
    let mut word = vec![0u8; p.size()];

    #[allow(clippy::too_many_arguments)]
    fn fill(
        k: usize,
        n: usize,
        parts: &[usize],
        off: &[usize],
        col_of: &[usize],
        row_of: &[usize],
        word: &mut Vec<u8>,
        shape: &Partition,
        out: &mut Vec<Tableau>,
    ) {
        if k == word.len() {
            out.push(Tableau::from_word_unchecked(shape.clone(), word.clone()));
            return;
        }
        let (a, b) = (col_of[k], row_of[k]);
        let mut lo = 1usize;
        if b > 0 {
            lo = lo.max(word[k - 1] as usize + 1);
        }
        if a > 0 {
            lo = lo.max(word[off[a - 1] + b] as usize);
        }
        // leave room for the rest of the column to increase strictly
        let hi = n - (parts[a] - 1 - b);
        for v in lo..=hi {
            word[k] = v as u8;
            fill(k + 1, n, parts, off, col_of, row_of, word, shape, out);
        }
    }

    fill(0, n, &parts, &off, &col_of, &row_of, &mut word, p, &mut out);
    out
}

pub fn content(t: &Tableau, n: usize) -> ContentVector {
    let mut counts = vec![0usize; n.max(t.max_entry())];
    for &x in t.word() {
        counts[x as usize - 1] += 1;
    }
    ContentVector(counts)
}

/// `r_u(n)`, the number of semistandard tableaux.
pub fn rank(p: &Partition, n: usize) -> usize {
    enumerate_tableaux(p, n).len()
}

/// Hook-content formula on the diagram of `p`. Independent of enumeration.
#[allow(clippy::needless_range_loop)]
pub fn hook_content_rank(p: &Partition, n: usize) -> BigInt {
    let rows = p.row_lengths();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (a, &col_len) in p.parts().iter().enumerate() {
        for b in 0..col_len {
            let c = n as i64 + a as i64 - b as i64;
            if c <= 0 {
                return BigInt::zero();
            }
            let hook = (rows[b] - a - 1) + (col_len - b - 1) + 1;
            num *= BigInt::from(c);
            den *= BigInt::from(hook);
        }
    }
    debug_assert!((&num % &den).is_zero());
    let r = num / den;
    debug_assert!(!r.is_negative());
    r
}

/// All partitions of `q` (as column-length tuples), in decreasing lexicographic order.
pub fn partitions_of(q: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            acc.push(part);
            rec(rem - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if q > 0 {
        rec(q, q, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn cols(t: &Tableau) -> Vec<Vec<usize>> {
        t.columns_usize()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let u = p(&[3, 1, 1]);
        assert_eq!(u.size(), 5);
        assert_eq!(u.len(), 3);
        assert_eq!(u.row_lengths(), vec![3, 1, 1]);
        assert_eq!(p(&[2, 1]).row_lengths(), vec![2, 1]);
        assert_eq!(Partition::from_row_lengths(&[3]).unwrap(), p(&[1, 1, 1]));
    }

    #[test]
    fn ast_examples() {
        assert!(!validate_ast(&p(&[1, 1, 1]), 2));
        assert!(validate_ast(&p(&[2, 1]), 3));
        assert!(!validate_ast(&p(&[2, 2]), 3));
        assert!(!validate_ast(&p(&[3, 1]), 2));
        assert!(!validate_ast(&p(&[1]), 4));
    }

    #[test]
    fn enumerate_single_row() {
        let ts = enumerate_tableaux(&p(&[1, 1, 1]), 2);
        let rows: Vec<Vec<usize>> = ts.iter().map(|t| t.word().iter().map(|&x| x as usize).collect()).collect();
        assert_eq!(rows, vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn enumerate_hook_shape() {
        let ts = enumerate_tableaux(&p(&[2, 1]), 2);
        assert_eq!(ts.len(), 2);
        assert_eq!(cols(&ts[0]), vec![vec![1, 2], vec![1]]);
        assert_eq!(cols(&ts[1]), vec![vec![1, 2], vec![2]]);
    }

    #[test]
    fn enumerate_too_long_column_is_empty() {
        assert!(enumerate_tableaux(&p(&[3, 1]), 2).is_empty());
        assert_eq!(rank(&p(&[3, 1]), 2), 0);
    }

    #[test]
    fn content_examples() {
        let t = Tableau::from_columns(&[vec![1], vec![1], vec![2]]).unwrap();
        assert_eq!(content(&t, 2).0, vec![2, 1]);
        let t = Tableau::from_columns(&[vec![1, 2], vec![1]]).unwrap();
        assert_eq!(content(&t, 2).0, vec![2, 1]);
        let t = Tableau::from_columns(&[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(content(&t, 3).0, vec![1, 1, 1]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&p(&[1, 1, 1]), 2), 4);
        assert_eq!(rank(&p(&[4]), 4), 1);
        assert_eq!(rank(&p(&[2, 1]), 3), 8);
        assert_eq!(hook_content_rank(&p(&[2, 1]), 3), BigInt::from(8));
        assert_eq!(hook_content_rank(&p(&[3, 1]), 2), BigInt::from(0));
    }

    #[test]
    fn from_columns_rejects_bad_fillings() {
        assert!(Tableau::from_columns(&[vec![2, 1]]).is_err());
        assert!(Tableau::from_columns(&[vec![1, 1]]).is_err());
        assert!(Tableau::from_columns(&[vec![2, 3], vec![1]]).is_err());
        assert!(Tableau::from_columns(&[vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn entry_indexing_is_column_major() {
        let t = Tableau::from_columns(&[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(t.entry(1, 2), Some(3));
        assert_eq!(t.entry(2, 1), Some(2));
        assert_eq!(t.entry(2, 2), None);
    }

    #[test]
    fn partitions_of_five() {
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(5)[0], p(&[5]));
    }

    #[test]
    fn tableau_serde() {
        let t = Tableau::from_columns(&[vec![1, 2], vec![3]]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,2],[3]]");
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>("[[2,1]]").is_err());
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
