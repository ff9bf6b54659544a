//! Exact-operator oracles, truncation errors, mesh diagnostics and
//! convergence studies.

pub mod diagnostics;
pub mod exponent;
pub mod functions;
pub mod study;
pub mod truncation;

pub use diagnostics::MeshDiagnostics;
pub use exponent::{estimate_exponent, fitted_exponent, Exponent};
pub use functions::{exact_fp_laplacian, TestFunction};
pub use study::{
    convergence_study, error_profile, max_error, moment_residuals, scheme_moments, Column,
    ConvergenceReport, Discretization, Measurement, Scheme, SchemeConfig, StudyRow,
};
pub use truncation::{truncation_error_mid, truncation_error_star};
