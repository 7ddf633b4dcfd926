//! Maxwell multipoles (symmetric trace-free tensor harmonics) in three
//! dimensions.
//!
//! The crate is `no_std` and only needs `alloc`. Tensor algebra is exact by
//! default ([`Rational`] scalars); floats enter at evaluation time.
//!
//! * [`sym_tensor`]: compact symmetric tensors, traces, symmetric detracing.
//! * [`legendre`]: Legendre polynomials with exact coefficients.
//! * [`maxwell`]: the multipoles `P^(l)(n)`, exact angular integration,
//!   multipole expansion and the table of identities they satisfy.
//! * [`harmonics`]: basis tensors and conversion to spherical harmonics.
//! * [`oracle`]: independent numerical machinery used to check all of the
//!   above (sphere quadrature, reference `Y_lm`, finite differences).
#![cfg_attr(not(test), no_std)]
// `!(x <= tol)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod exact;
pub mod harmonics;
pub mod legendre;
pub mod maxwell;
pub mod multiset;
pub mod oracle;
pub mod sym_tensor;

pub use error::{Error, Result};
pub use exact::{Exact, Rational, RealScalar, Scalar};
pub use harmonics::{Basis, BasisTensor, SphCoeffs};
pub use legendre::LegendrePoly;
pub use maxwell::{AngularPolynomial, MultipoleExpansion, Rotation, UnitVec};
pub use sym_tensor::{FullTensor, PairedTensor, StfTensor, SymTensor};
