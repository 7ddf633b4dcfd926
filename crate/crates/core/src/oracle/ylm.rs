//! Reference spherical harmonics from the normalized associated-Legendre
//! recurrence, Condon–Shortley phase.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// `sqrt((2l+1)/(4π) (l-m)!/(l+m)!) P_l^m(x)` for `0 <= m <= l`, including
/// the `(-1)^m` phase.
pub fn normalized_associated_legendre(l: usize, m: usize, x: f64) -> f64 {
    debug_assert!(m <= l);
    let s = libm::sqrt((1.0 - x * x).max(0.0));
    let mut pmm = 1.0 / (4.0 * PI);
    for k in 1..=m {
        let kf = k as f64;
        pmm *= (2.0 * kf - 1.0) / (2.0 * kf);
    }
    let mut pmm = libm::sqrt((2.0 * m as f64 + 1.0) * pmm);
    for _ in 0..m {
        pmm *= -s;
    }
    if l == m {
        return pmm;
    }
    let mut p_prev = pmm;
    let mut p_cur = x * libm::sqrt(2.0 * m as f64 + 3.0) * pmm;
    let mf = m as f64;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = libm::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
        let lp = lf - 1.0;
        let a_prev = libm::sqrt((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf));
        let next = a * (x * p_cur - p_prev / a_prev);
        p_prev = p_cur;
        p_cur = next;
    }
    p_cur
}

/// `Y_lm(θ, φ)` with `Y_{l,-m} = (-1)^m conj(Y_lm)`.
pub fn reference_ylm(l: usize, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let am = m.unsigned_abs() as usize;
    if am > l {
        return Err(Error::InvalidOrder { l, m });
    }
    let p = normalized_associated_legendre(l, am, libm::cos(theta));
    let phase = Complex64::new(libm::cos(am as f64 * phi), libm::sin(am as f64 * phi));
    let y = phase * p;
    if m >= 0 {
        Ok(y)
    } else if am.is_multiple_of(2) {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}
