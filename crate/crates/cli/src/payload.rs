//! JSON payload schemas, one per subcommand. Every schema round-trips:
//! serializing a parsed payload gives back the canonical input.

use schur_core::format::{format_rational, parse_rational, MatrixDoc};
use schur_core::{Matrix, Partition, Rational, RationalMatrix, WeightVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Rational carried as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        format_rational(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

pub fn unwrap_qs(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn wrap_qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

/// A matrix given explicitly, as a diagonal, or as the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Named(Named),
    Diagonal { diagonal: Vec<Q> },
    Dense(MatrixDoc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Named {
    Identity,
}

impl MatrixSpec {
    /// Resolves the matrix; `n` is required for the identity.
    pub fn resolve(&self, n: Option<usize>) -> Result<RationalMatrix, String> {
        let m = match self {
            MatrixSpec::Named(Named::Identity) => {
                Matrix::identity(n.ok_or("field `n` is required with matrix \"identity\"")?)
            }
            MatrixSpec::Diagonal { diagonal } => Matrix::diagonal_from(&unwrap_qs(diagonal)),
            MatrixSpec::Dense(doc) => doc.to_matrix().map_err(|e| format!("matrix: {e}"))?,
        };
        if let Some(n) = n {
            if m.rows() != n || m.cols() != n {
                return Err(format!("matrix is {}x{} but n = {n}", m.rows(), m.cols()));
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeN {
    pub partition: Partition,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Column,
    Row,
}

impl Convention {
    fn is_default(&self) -> bool {
        *self == Convention::Column
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurMatrixPayload {
    pub partition: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub matrix: MatrixSpec,
    #[serde(default, skip_serializing_if = "Convention::is_default")]
    pub convention: Convention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OraclePayload {
    pub partition: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetTwistPayload {
    pub partition: Partition,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub matrix: MatrixSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LrPayload {
    pub left: Partition,
    pub right: Partition,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymTensorPayload {
    pub q: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightPayload {
    pub partition: Partition,
    pub weights: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub phi_val: Vec<Q>,
    pub ht_weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_const: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopesPayload {
    pub point: PointDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetriangulatePayload {
    pub point: PointDoc,
    /// `σ(1), …, σ(n)`, 1-based.
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppearancesPayload {
    pub n: usize,
    /// 1-based constant-weight positions.
    pub const_indices: Vec<usize>,
    pub points: Vec<PointDoc>,
}

/// Output record for a matrix.
pub fn matrix_doc(m: &RationalMatrix) -> MatrixDoc {
    MatrixDoc::from_matrix(m)
}
