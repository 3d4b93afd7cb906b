//! Hopf algebra structure on presentations and on finite bases: tensor
//! powers, algebra maps, axiom checks, antipode solving and duals.

mod algmap;
mod antipode;
mod checks;
mod findim;
mod spec;
mod tensor;

pub use algmap::{extend_algebra_map, relation_residuals, word_residuals, AlgebraMap, ScalarField, Target};
pub use antipode::solve_antipode;
pub use checks::{hopf_axioms, HOPF_CHECKS};
pub use findim::{
    basis_vec, dual_findim, duality_check, find_isomorphism, morphism_violations, pairing_eval, FinHopf,
    SparseTensor, SparseVec,
};
pub use spec::{show_pairs, AntipodeMap, HopfSpec, TensorElement};
pub use tensor::TensorPower;
