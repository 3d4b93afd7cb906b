//! Built-in models: the Planck-scale line, the three-dimensional
//! bicrossproduct, the braided quantum plane, FRT and braided-matrix
//! instances, and finite-group Hopf algebras.

mod planck;
mod registry;

pub use planck::{
    abelianization, abelianize, classical_limit, heisenberg_flow, planck_model, regime_report, Flow, PlanckModel,
    Regime, RegimeReport, BLACK_HOLE_ANNOTATION,
};
pub use registry::{
    bicso3_model, braided_matrices_sl2, frt_sl2, lookup, model_names, models_from_document, qplane,
    s3_bicrossproduct, Model, MODEL_FILES,
};
