use crate::{Error, Result};

/// Second-order central-difference estimate of the angular Laplacian
/// `(1/sinθ) ∂θ(sinθ ∂θ f) + (1/sin²θ) ∂φ² f` at `(θ, φ)`.
///
/// Requires `sin θ >= 0.1` and the stencil to stay inside `(0, π)`.
pub fn fd_angular_laplacian(
    f: impl Fn(f64, f64) -> f64,
    theta: f64,
    phi: f64,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidStep(h));
    }
    let st = libm::sin(theta);
    if st < 0.1 || theta - h <= 0.0 || theta + h >= core::f64::consts::PI {
        return Err(Error::PoleProximity(st));
    }
    let f0 = f(theta, phi);
    let up = f(theta + h, phi);
    let down = f(theta - h, phi);
    let s_up = libm::sin(theta + 0.5 * h);
    let s_down = libm::sin(theta - 0.5 * h);
    let polar = (s_up * (up - f0) - s_down * (f0 - down)) / (h * h * st);
    let azimuthal = (f(theta, phi + h) - 2.0 * f0 + f(theta, phi - h)) / (h * h * st * st);
    Ok(polar + azimuthal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn dipole_eigenvalue() {
        let theta = PI / 3.0;
        let f = |t: f64, _p: f64| libm::cos(t);
        let e1 = (fd_angular_laplacian(f, theta, 0.4, 0.02).unwrap() + 2.0 * theta.cos()).abs();
        let e2 = (fd_angular_laplacian(f, theta, 0.4, 0.01).unwrap() + 2.0 * theta.cos()).abs();
        assert!(e1 < 1e-3);
        let ratio = e1 / e2;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn constant_is_harmonic() {
        let v = fd_angular_laplacian(|_, _| 2.5, 1.0, 0.0, 0.01).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            fd_angular_laplacian(|_, _| 0.0, 0.05, 0.0, 0.01),
            Err(Error::PoleProximity(_))
        ));
        assert!(matches!(
            fd_angular_laplacian(|_, _| 0.0, 1.0, 0.0, 0.0),
            Err(Error::InvalidStep(_))
        ));
    }
}
