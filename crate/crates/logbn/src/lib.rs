//! Numerical toolkit for the critical-exponent elliptic problem with a
//! logarithmic perturbation,
//!
//! ```text
//! −Δu = |u|^{2*−2} u + λ u + μ u log u²   in Ω,   u = 0 on ∂Ω,
//! ```
//!
//! on bounded domains discretized as masked uniform grids. The crate
//! computes candidate positive solutions by mountain-pass path deformation
//! and Nehari-manifold projected gradient flow, verifies the energy-level
//! estimates and cutoff-bubble integral asymptotics by high-accuracy radial
//! quadrature, and classifies the (λ, μ) parameter plane into existence and
//! nonexistence regions.

pub mod cg;
pub mod constants;
pub mod domain;
pub mod error;
pub mod field;
pub mod functional;
pub mod quad;
pub mod regions;
pub mod solvers;
pub mod special;
pub mod synth;
pub mod testfunctions;

pub use domain::{build_grid, integrate, laplacian_apply, rho_max, DomainKind, DomainSpec, Grid};
pub use error::{Error, Result};
pub use field::Field;
pub use functional::{energy, gradient, nehari_g, nehari_project, EnergyBreakdown, Params};
