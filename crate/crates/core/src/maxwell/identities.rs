//! Identities of the multipoles, each evaluated so that both sides can be
//! compared.

use core::f64::consts::PI;

use crate::exact::Scalar;
use crate::oracle::{legendre_projection, QuadValue};
use crate::sym_tensor::{StfTensor, SymTensor};
use crate::{Error, Result};

use super::{maxwell_eval, UnitVec};

/// `Σ_{l=0}^{L} P^(l)(n) · q^{⊗l}`, which tends to `1/sqrt(1 - 2 n·q + |q|²)`.
pub fn generating_partial_sum(n: &UnitVec, q: [f64; 3], lmax: usize) -> Result<f64> {
    let radius = libm::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    if !(radius < 1.0) {
        return Err(Error::GeneratingRadius(radius));
    }
    Ok((0..=lmax)
        .map(|l| {
            let ql = SymTensor::outer_power(&q, l);
            maxwell_eval(l, n).contract_full(&ql).expect("same rank")
        })
        .sum())
}

/// `1/sqrt(1 - 2 n·q + |q|²)`.
pub fn generating_closed_form(n: &UnitVec, q: [f64; 3]) -> f64 {
    let v = n.as_array();
    let nq = v[0] * q[0] + v[1] * q[1] + v[2] * q[2];
    let qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    1.0 / libm::sqrt(1.0 - 2.0 * nq + qq)
}

/// Largest residual components of the two recurrences at `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceResiduals {
    /// `(2l+1) n_j P^(l)_I - (l+1) P^(l+1)_{jI} - (2l-1) δ_{j{i1} P^(l-1)_{i2...il}}`
    pub three_term: f64,
    /// `n_j P^(l)_{j i2...} - P^(l-1)_{i2...}`
    pub contraction: f64,
}

pub fn recurrence_check(l: usize, n: &UnitVec) -> Result<RecurrenceResiduals> {
    if l == 0 {
        return Err(Error::RankTooLow { min: 1, found: 0 });
    }
    let v = n.as_array();
    let lower = maxwell_eval(l - 1, n);
    let here = maxwell_eval(l, n);
    let upper = maxwell_eval(l + 1, n);
    let lf = l as f64;
    let mut three_term: f64 = 0.0;
    for j in 0..3 {
        let mut e = [0.0; 3];
        e[j] = 1.0;
        let from_upper = upper.contract_vector(&e)?;
        let delta_term = SymTensor::outer_power(&e, 1).sym_outer(&lower)?.detrace()?;
        for ((a, b), c) in here
            .components()
            .iter()
            .zip(from_upper.components())
            .zip(delta_term.components())
        {
            let r = (2.0 * lf + 1.0) * v[j] * a - (lf + 1.0) * b - (2.0 * lf - 1.0) * c;
            three_term = three_term.max(libm::fabs(r));
        }
    }
    let contraction = here.contract_vector(&v)?.max_abs_diff(&lower)?;
    Ok(RecurrenceResiduals {
        three_term,
        contraction,
    })
}

/// `(s^{⊗l} · P^(l)(n), P^(l)(s) · P^(l)(n))`; the first equals `P_l(n·s)`
/// and the second `C(2l,l)/2^l · P_l(n·s)`.
pub fn link_to_legendre(l: usize, n: &UnitVec, s: &UnitVec) -> (f64, f64) {
    let pn = maxwell_eval(l, n);
    let sl = SymTensor::outer_power(&s.as_array(), l);
    let first = sl.contract_full(&pn).expect("same rank");
    let second = maxwell_eval(l, s).contract_full(&pn).expect("same rank");
    (first, second)
}

/// `∫ P^(l)(n) f(n·s) dΩ = 2π P^(l)(s) ∫_{-1}^{1} P_l(x) f(x) dx`, with the
/// one-dimensional integral by Gauss–Legendre refined to tolerance `tol`.
pub fn funk_hecke<T>(l: usize, f: impl Fn(f64) -> T, s: &UnitVec, tol: f64) -> Result<StfTensor<T>>
where
    T: QuadValue + Scalar,
{
    let radial = legendre_projection(l, f, tol)?;
    Ok(maxwell_eval(l, s).map(|c| radial * (2.0 * PI * c)))
}
