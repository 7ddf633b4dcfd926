//! Numerical machinery that checks the analytic results independently.
//!
//! Nothing in here calls the closed-form integration path in
//! [`crate::maxwell`]; agreement between the two is the point.

mod gamma;
mod laplacian;
pub mod quadrature;
mod ylm;

pub use gamma::{gamma_integrals, unit_vector_integral_tensor};
pub use laplacian::fd_angular_laplacian;
pub use quadrature::{
    gauss_legendre, integrate_interval, integrate_sphere, legendre_projection, CompensatedSum,
    QuadValue, SphereQuadrature,
};
pub use ylm::{normalized_associated_legendre, reference_ylm};
