//! Numerical differential geometry for parametric maps into the standard
//! symplectic and contact models `T*R^n` (form `dp ∧ dq`) and
//! `J^1(R^n, R)` (form `dz − p·dq`).
//!
//! The crate provides 2-jets of parametric maps (analytic where the model
//! supplies them, finite differences otherwise), pullback residuals of the
//! symplectic and contact forms, Gauss maps with limiting planes at
//! corank-1 points, principal-angle distances between planes, and
//! transversality defects against the vertical foliations.

mod domain;
mod error;
mod finite_diff;
mod forms;
mod jet;
mod map;
mod plane;

pub use domain::{DomainKind, ParamDomain};
pub use error::GeomError;
pub use finite_diff::{gradient_fd, hessian_fd, jacobian_fd, jacobian_fd_in, H_FD};
pub use forms::{contact_residual, pullback_residual, symplectic_residual, PullbackForm};
pub use jet::{Jet2, JetOrder};
pub use map::{eval_jet, eval_jet_in, validate_analytic_jacobian, FnMap, MapRef, SmoothMap, TargetSpace};
pub use plane::{
    gauss_plane, gauss_plane_limit, gauss_plane_one_sided, plane_distance, principal_angles,
    vertical_defect, FoliationKind, FoliationSpec, LagrangianPlane,
};

/// Default tolerance for form-vanishing checks with analytic jets.
pub const TOL_FORM_ANALYTIC: f64 = 1e-8;
/// Default tolerance for form-vanishing checks with finite-difference jets.
pub const TOL_FORM_FD: f64 = 1e-5;
