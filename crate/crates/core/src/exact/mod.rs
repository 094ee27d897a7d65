//! Exact and certified-numeric foundations.

pub mod abelian;
pub mod ball;
pub mod lattice;
pub mod matrix;
pub mod poly;

pub use abelian::{abelian_structure, FinAbelianGroup};
pub use ball::{Ball, CBall};
pub use lattice::{enumerate_short_vectors, lll_reduce, GramMatrix, ShortVectors};
pub use matrix::{hnf, rational_kernel, snf, IntMatrix, RatMatrix};
pub use poly::Poly;
