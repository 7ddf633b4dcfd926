//! Fourier transform of the quadrupole potential `V = (2/(3r³)) Q : P^(2)(n)`.
//!
//! The angular integral is done by the Funk–Hecke step, leaving
//! `Ṽ(k) = (2/3) Q : P^(2)(k̂) · 2π ∫ g(u)/u du` with `u = |k| r` and
//! `g(u) = ∫_{-1}^{1} P_2(x) e^{iux} dx`. The radial integral runs between
//! finite cutoffs.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::exact::RealScalar;
use crate::legendre::legendre;
use crate::oracle::{gauss_legendre, quadrature::integrate_with_rule};
use crate::sym_tensor::SymTensor;
use crate::{Error, Result};

use super::{maxwell_eval, UnitVec};

const INPUT_TOLERANCE: f64 = 1e-12;
const PANEL_NODES: usize = 12;
const LOG_PANELS_PER_DECADE: f64 = 8.0;

/// `∫_{-1}^{1} P_l(x) e^{iux} dx`.
///
/// Small `u` uses a Gauss–Legendre rule with enough nodes to resolve the
/// oscillation. Large `u` uses the terminating integration-by-parts series
/// `Σ_j (-1)^j [P_l^(j)(x) e^{iux}]_{-1}^{1} / (iu)^{j+1}`.
pub fn legendre_exp_moment(l: usize, u: f64) -> Complex64 {
    if libm::fabs(u) <= 32.0 + (l * l) as f64 {
        exp_moment_quadrature(l, u)
    } else {
        exp_moment_by_parts(l, u)
    }
}

fn exp_moment_quadrature(l: usize, u: f64) -> Complex64 {
    let n = libm::ceil(libm::fabs(u)) as usize + l + 40;
    let (nodes, weights) = gauss_legendre(n);
    let p = legendre(l);
    integrate_with_rule(
        &|x: f64| Complex64::new(libm::cos(u * x), libm::sin(u * x)) * p.eval(x),
        -1.0,
        1.0,
        &nodes,
        &weights,
    )
}

fn exp_moment_by_parts(l: usize, u: f64) -> Complex64 {
    let mut coeffs: Vec<f64> = legendre(l)
        .coeffs()
        .iter()
        .map(RealScalar::to_f64)
        .collect();
    let iu = Complex64::new(0.0, u);
    let plus = Complex64::new(libm::cos(u), libm::sin(u));
    let minus = plus.conj();
    let mut denom = iu;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=l {
        let at = |x: f64| coeffs.iter().rev().fold(0.0, |a, c| a * x + c);
        let term = (plus * at(1.0) - minus * at(-1.0)) / denom;
        acc += if j % 2 == 0 { term } else { -term };
        denom *= iu;
        coeffs = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
    }
    acc
}

/// `∫_a^b g(u)/u du` over logarithmic panels below `2π` and panels of width
/// at most `π` above.
fn radial_integral(a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let integrand = |u: f64| legendre_exp_moment(2, u).re / u;
    let split = 2.0 * PI;
    let mut acc = 0.0;
    if a < split {
        let hi = b.min(split);
        let decades = libm::log10(hi / a);
        let panels = libm::ceil(LOG_PANELS_PER_DECADE * decades).max(1.0) as usize;
        let ratio = libm::pow(hi / a, 1.0 / panels as f64);
        let mut lo = a;
        for i in 0..panels {
            let up = if i + 1 == panels { hi } else { lo * ratio };
            acc += integrate_with_rule(&integrand, lo, up, nodes, weights);
            lo = up;
        }
    }
    if b > split {
        let lo = a.max(split);
        let panels = libm::ceil((b - lo) / PI).max(1.0) as usize;
        let width = (b - lo) / panels as f64;
        for i in 0..panels {
            let start = lo + i as f64 * width;
            let end = if i + 1 == panels { b } else { start + width };
            acc += integrate_with_rule(&integrand, start, end, nodes, weights);
        }
    }
    acc
}

/// Value of the transform with the upper cutoff at `r_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialCheckpoint {
    pub r_max: f64,
    pub numeric: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadrupoleFourier {
    pub numeric: f64,
    pub closed_form: f64,
    /// `|numeric - closed_form| / |closed_form|`, or the absolute difference
    /// when the closed form vanishes.
    pub relative_error: f64,
    /// Running values at `r_max = 10^p` inside the cutoff range, ending with
    /// the requested `r_max`.
    pub checkpoints: Vec<RadialCheckpoint>,
}

/// `Ṽ(k)` for the quadrupole potential with cutoffs `[r_min, r_max]`, next to
/// the closed form `-(4π/3) k·Q·k / k²`.
pub fn quadrupole_fourier_demo(
    q: [[f64; 3]; 3],
    k: [f64; 3],
    r_min: f64,
    r_max: f64,
) -> Result<QuadrupoleFourier> {
    let mut asym: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            asym = asym.max(libm::fabs(q[i][j] - q[j][i]));
        }
    }
    if !(asym <= INPUT_TOLERANCE) {
        return Err(Error::NotSymmetric(asym));
    }
    let trace = q[0][0] + q[1][1] + q[2][2];
    if !(libm::fabs(trace) <= INPUT_TOLERANCE) {
        return Err(Error::NotTraceless(trace));
    }
    let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if k2 == 0.0 {
        return Err(Error::ZeroWaveVector);
    }
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::InvalidCutoffs(r_min, r_max));
    }
    let kn = libm::sqrt(k2);
    let s = UnitVec::normalize(k)?;

    let dense: Vec<f64> = q.iter().flatten().copied().collect();
    let q_sym = SymTensor::from_dense_symmetric(2, 3, &dense)?;
    let q_p2 = q_sym.contract_full(&maxwell_eval(2, &s))?;
    let angular = 2.0 / 3.0 * q_p2 * 2.0 * PI;

    let mut kqk = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            kqk += k[i] * q[i][j] * k[j];
        }
    }
    let closed_form = -4.0 * PI / 3.0 * kqk / k2;

    let (nodes, weights) = gauss_legendre(PANEL_NODES);
    let mut marks: Vec<f64> = Vec::new();
    let mut p = libm::ceil(libm::log10(r_min)) as i32;
    loop {
        let r = libm::pow(10.0, p as f64);
        if r >= r_max {
            break;
        }
        if r > r_min {
            marks.push(r);
        }
        p += 1;
    }
    marks.push(r_max);

    let mut checkpoints = Vec::with_capacity(marks.len());
    let mut radial = 0.0;
    let mut lo = r_min;
    for r in marks {
        radial += radial_integral(kn * lo, kn * r, &nodes, &weights);
        checkpoints.push(RadialCheckpoint {
            r_max: r,
            numeric: angular * radial,
        });
        lo = r;
    }
    let numeric = angular * radial;
    let diff = libm::fabs(numeric - closed_form);
    let relative_error = if closed_form == 0.0 {
        diff
    } else {
        diff / libm::fabs(closed_form)
    };
    Ok(QuadrupoleFourier {
        numeric,
        closed_form,
        relative_error,
        checkpoints,
    })
}
