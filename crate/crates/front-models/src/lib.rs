//! Closed-form evaluators for the explicit local models of wrinkled
//! Lagrangian and Legendrian embeddings: the smooth wrinkle and its embryo,
//! the Lagrangian wrinkle and Legendrian lift, the fibered wrinkle, cusp and
//! swallowtail sharpening homotopies, and the regularization construction.

pub mod bump;
pub mod catalog;
mod error;
pub mod fields;
pub mod jet2d;
mod lagrangian;
pub mod quadrature;
mod regularize;
mod sharpening;
mod wrinkle;

pub use bump::{
    cutoff_psi_axial, cutoff_rho, eta_profile, even_step, mollifier, plateau, sharpen_phi,
    sharpen_psi, smoothstep, step_between, unit_bump, verify_sharpening_profile, BumpKind,
    BumpSpec,
};
pub use catalog::{build_model, default_domain, parse_params, Params, MODEL_NAMES};
pub use error::ModelError;
pub use jet2d::Jet2D;
pub use lagrangian::{CuspModel, FoldModel, LagrangianWrinkle, ZeroSection};
pub use regularize::{FibreCtx, RegBump, RegularizedWrinkle};
pub use sharpening::{
    c1_distance, front_area_discrepancy, CuspSharpening, Swallowtail, SwallowtailSharpening,
};
pub use wrinkle::{Embryo, FiberedWrinkle, SmoothWrinkle};
