//! Exact computer algebra for Hopf algebras, bicrossproduct models,
//! FRT bialgebras, braided planes and braided matrices.

pub mod braided;
pub mod dsl;
pub mod error;
pub mod freealg;
pub mod groups;
pub mod hopf;
pub mod models;
pub mod report;
pub mod scalars;
pub mod suite;

pub use error::{Error, Result};
