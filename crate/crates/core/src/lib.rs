//! Exact computation of special linear Lie rings over nonassociative
//! algebras.
//!
//! The crate builds structure-constant algebras (including every unital
//! composition algebra by Cayley-Dickson doubling), closes sets of
//! operator matrices under commutators or products, and checks the results
//! against independently built oracle subspaces. All arithmetic is exact
//! over `Q` or `Q(i)`.

pub mod algebra;
pub mod closure;
pub mod error;
pub mod exact;
pub mod sample;
pub mod special_linear;
pub mod two_dim;

pub use error::{Error, Result};
