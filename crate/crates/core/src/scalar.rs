//! Scalar abstractions shared by every matrix-valued routine.
//!
//! Straightening only ever produces integer coefficients, so the Schur matrix
//! itself is defined over any commutative ring that can absorb an integer.
//! The oracle and the inverse/determinant routines need exact division and are
//! restricted to [`Field`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_integer::Integer;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// A commutative ring element usable as a matrix entry.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    /// Image of an integer under the canonical map `Z -> Self`.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// `(m, d)` with `a = m / d` and `m` integral, when `Self` has fractions
    /// worth clearing before polynomial work.
    fn clear_denominators(_a: &Matrix<Self>) -> Option<(Matrix<BigInt>, Self)> {
        None
    }

    /// `a * b` for conforming matrices.
    fn matmul(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        let mut out = Matrix::<Self>::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for k in 0..a.cols() {
                let x = &a[(i, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols() {
                    let y = &b[(k, j)];
                    if y.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }
}

/// Scalars with exact division; zero tests are reliable.
pub trait Field: Scalar {}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn clear_denominators(a: &Matrix<Self>) -> Option<(Matrix<BigInt>, Self)> {
        let den = a.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let m = a.map(|x| x.numer() * (&den / x.denom()));
        Some((m, BigRational::from_integer(den)))
    }

    // Each row of `a` and column of `b` is brought to a common denominator
    // once, so the inner products run over integers with one reduction per
    // entry instead of one per term.
    fn matmul(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());
        let scaled = |get: &dyn Fn(usize) -> BigRational| -> (Vec<BigInt>, BigInt) {
            let den = (0..inner).fold(BigInt::one(), |acc, k| acc.lcm(get(k).denom()));
            let nums = (0..inner).map(|k| {
                let x = get(k);
                x.numer() * (&den / x.denom())
            });
            (nums.collect(), den)
        };
        let lhs: Vec<_> = (0..rows).map(|i| scaled(&|k| a[(i, k)].clone())).collect();
        let rhs: Vec<_> = (0..cols).map(|j| scaled(&|k| b[(k, j)].clone())).collect();
        Matrix::from_fn(rows, cols, |i, j| {
            let (x, dx) = &lhs[i];
            let (y, dy) = &rhs[j];
            let mut acc = BigInt::zero();
            for (u, v) in x.iter().zip(y) {
                if !u.is_zero() && !v.is_zero() {
                    acc += u * v;
                }
            }
            BigRational::new(acc, dx * dy)
        })
    }
}
impl Field for BigRational {}

impl Scalar for Rational64 {
    fn from_bigint(n: &BigInt) -> Self {
        Rational64::from_integer(n.to_i64().expect("integer does not fit in i64"))
    }
}
impl Field for Rational64 {}

impl Scalar for BigInt {
    fn from_bigint(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Scalar for i64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i64().expect("integer does not fit in i64")
    }
}

impl Scalar for i128 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_i128().expect("integer does not fit in i128")
    }
}

// Floats are rings for our purposes but never fields: elimination on them is
// not exact, so the oracle refuses them.
impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: usize) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}
