//! Exact sparse linear algebra over ℚ.

pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod space;
pub mod tensor;
pub mod vector;

pub use linalg::{image_basis, inverse, kernel_basis, rank, render, solve, solve_in_subspace, Rref, Subspace};
pub use matrix::SparseMatrix;
pub use scalar::{ScalarParseError, Q};
pub use space::{Shape, Space};
pub use tensor::{apply_mid, flip, permute_flat, SparseTensor};
pub use vector::{Accumulator, SparseVec};
