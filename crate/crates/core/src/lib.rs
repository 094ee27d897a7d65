//! Galois-equivariant invariants of number fields: relations among norm
//! idempotents and the identities they induce on unit ranks, class groups,
//! roots of unity, Arakelov genera and theta sums.

pub mod arakelov;
pub mod error;
pub mod corpus;
pub mod exact;
pub mod extension;
pub mod field;
pub mod group;
pub mod ideal;
pub mod input;
pub mod theta;

pub use error::{Error, Result};
