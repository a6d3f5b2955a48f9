//! Exact scalars and the linear algebra everything else is built on.

mod matrix;
mod scalar;
mod subspace;

pub(crate) use matrix::check_field as matrix_check_field;
pub use matrix::{kernel_basis, rref, signature, OperatorMatrix, Rref, Signature};
pub use scalar::{Field, GaussianRational, Rational, Scalar};
pub use subspace::Subspace;
