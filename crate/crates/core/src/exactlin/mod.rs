//! Exact linear algebra over ℚ and 𝔽_p.
//!
//! Tensor products use one basis convention everywhere: `e_i ⊗ e_j` of
//! `V ⊗ W` has index `i * dim(W) + j`. A linear map `V → W` is a
//! `dim(W) × dim(V)` matrix acting on column vectors.

mod enumerate;
mod field;
mod mat;
mod subspace;

pub use enumerate::{count_matrices, count_vectors, matrix_at, vector_at};
pub use field::{Field, Scalar};
pub use mat::{tensor, tensor_index_map, Mat};
pub use subspace::{intersect, kernel, rref, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch in {context}: {left:?} vs {right:?}")]
    DimMismatch {
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("vector is not in the subspace")]
    NotInSubspace,
}
