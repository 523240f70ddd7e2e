//! Schur functors on explicit matrices, their characters and torus kernels,
//! and slope arithmetic for trianguline points.
//!
//! Everything matrix-valued is generic over [`Scalar`]; the aliases below fix
//! exact rationals, which is what the command line and the test batteries use.

pub mod character;
pub mod error;
pub mod format;
pub mod matrix;
pub mod minors;
pub mod oracle;
pub mod partition;
pub mod scalar;
pub mod schur;
pub mod slope;
pub mod snf;
pub mod straighten;
pub mod weight;

pub use character::{
    character, decompose_character, pieri_add_box, product_decompose, schur_polynomial,
    sym_tensor_std_decompose, Poly, SchurDecomposition,
};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use oracle::{schur_oracle, OracleResult};
pub use partition::{
    content, enumerate_tableaux, hook_content_rank, partitions_of, rank, validate_ast, ContentVector,
    Partition, Tableau,
};
pub use scalar::{Field, Scalar};
pub use schur::{det_twist_check, schur_matrix, schur_matrix_row_convention, SchurModule};
pub use slope::{
    admissible_permutations, default_norm_const, kdiff_holds, retriangulate_slopes, slopes, FamilySpec,
    Permutation, TriangulinePoint,
};
pub use straighten::{straighten, Straightener, TabloidExpansion};
pub use weight::{
    induced_parameters, swtsl_check, torus_kernel, weight_image, KernelDescriptor, ParameterMonomial,
    SwtslReport, WeightVector,
};

pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
pub type Rational64Matrix = Matrix<num_rational::Rational64>;
pub type F64Matrix = Matrix<f64>;
pub type F32Matrix = Matrix<f32>;
pub type IntMatrix = Matrix<num_bigint::BigInt>;
pub type RationalPoint = TriangulinePoint<Rational>;
pub type RationalFamily = FamilySpec<Rational>;
