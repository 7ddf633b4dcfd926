//! Maxwell multipoles `P^(l)(n) = C(2l,l)/2^l · {n_{i1} ... n_{il}}`.
//!
//! Integrals of polynomials over the sphere are exact: every one reduces to
//! [`angular_integral_monomial`]. Quadrature lives in [`crate::oracle`] and
//! is only used to cross-check.

mod expansion;
mod fourier;
mod identities;
mod integrals;
mod multipole;
mod polynomial;
mod rotation;
mod unit_vec;

pub use expansion::{expand, expand_truncated, reconstruct, MultipoleExpansion};
pub use fourier::{
    legendre_exp_moment, quadrupole_fourier_demo, QuadrupoleFourier, RadialCheckpoint,
};
pub use identities::{
    funk_hecke, generating_closed_form, generating_partial_sum, link_to_legendre, recurrence_check,
    RecurrenceResiduals,
};
pub use integrals::{
    angular_integral_monomial, integrate, integrate_product, orthogonality_tensor,
};
pub use multipole::{maxwell_eval, maxwell_tensor, MaxwellTensor};
pub use polynomial::AngularPolynomial;
pub use rotation::{rotate, Rotation};
pub use unit_vec::UnitVec;
