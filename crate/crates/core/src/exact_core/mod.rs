//! Exact scalar, polynomial and matrix arithmetic.

mod matrix;
mod poly;
mod scalar;
mod tensor;

pub use matrix::{Matrix, PolyMatrix, Ring, ScalarMatrix};
pub use poly::{Monomial, Poly2};
pub use scalar::Scalar;
pub use tensor::{embed, permute_factors};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("ragged rows")]
    Ragged,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("reference matrix is identically zero")]
    ZeroReference,
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("invalid tensor layout: {0}")]
    Layout(String),
}

/// Top-level convenience: `a · b`.
pub fn poly_matrix_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix, ExactError> {
    a.mul(b)
}

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.kron(b)
}

/// `ab - sign·ba`.
pub fn commutator<T: Ring>(a: &Matrix<T>, b: &Matrix<T>, sign: i8) -> Result<Matrix<T>, ExactError> {
    a.commutator(b, sign)
}

/// Ratio `(num, den)` with `a · den = num · b`, if one exists.
pub fn proportional_to(a: &PolyMatrix, b: &PolyMatrix) -> Result<Option<(Poly2, Poly2)>, ExactError> {
    a.proportional_to(b)
}
