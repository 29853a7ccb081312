//! Small dense linear-algebra kernels.

pub mod eig;
pub mod matrix;
pub mod svd;

pub use eig::{eig_hermitian, eigenvalues_hermitian, HermitianEigen};
pub use matrix::{ComplexMatrix, Matrix, RealMatrix};
pub use svd::{singular_values, svd_real, SvdResult};

use crate::scalar::Real;

/// Kronecker product of two real matrices.
pub fn kron<T: Real>(a: &RealMatrix<T>, b: &RealMatrix<T>) -> RealMatrix<T> {
    a.kron(b)
}
