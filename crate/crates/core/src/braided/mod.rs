//! Yang-Baxter operators, braidings extended to words, braided tensor
//! products, FRT bialgebras with their bicharacters, and braided matrices.

mod bmatrix;
mod braiding;
mod frt;
mod linalg;
mod rmatrix;

pub use bmatrix::{braided_hopf_check, braided_matrices, braided_tensor_algebra, non_commutator_rules};
pub use braiding::{reduce_pairs, Braiding, Recursion, TensorTerms};
pub use frt::{dqua_check, frt_bialgebra, frt_presentation, Bicharacter, Extension, FrtBialgebra};
pub use linalg::{add_linear_relations, DenseMatrix};
pub use rmatrix::{braiding_from_rmatrix, ybe_check, ybe_report, ybe_violations, RMatrix};
