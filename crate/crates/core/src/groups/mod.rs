//! Finite groups, exact factorisations, matched pairs, and the finite
//! Hopf algebras built from them.

mod factor;
mod group;
mod hopf;

pub use factor::{
    find_factorisations, find_factorisations_bounded, matched_pair, subgroup_closure, subgroups, Factorisation, Mask,
    MatchedPair,
};
pub use group::{group_from_table, FinGroup, DEFAULT_ORDER_BOUND};
pub use hopf::{
    bicross_inclusion, bicross_projection, bicrossproduct, convolution, fourier, fourier_check, function_hopf,
    group_hopf, inverse_fourier,
};
