use crate::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-9;

/// Direction on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVec([f64; 3]);

impl UnitVec {
    /// Accepts `(x, y, z)` with `|x² + y² + z² - 1| <= 1e-9` and rescales it
    /// to unit length.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !(libm::fabs(norm_sq - 1.0) <= UNIT_TOLERANCE) {
            return Err(Error::NotUnit(norm_sq));
        }
        let s = 1.0 / libm::sqrt(norm_sq);
        Ok(UnitVec([x * s, y * s, z * s]))
    }

    /// Direction of any nonzero finite vector.
    pub fn normalize(v: [f64; 3]) -> Result<Self> {
        let norm_sq = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if !(norm_sq > 0.0 && norm_sq.is_finite()) {
            return Err(Error::NotUnit(norm_sq));
        }
        let s = 1.0 / libm::sqrt(norm_sq);
        Ok(UnitVec([v[0] * s, v[1] * s, v[2] * s]))
    }

    /// `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let st = libm::sin(theta);
        UnitVec([st * libm::cos(phi), st * libm::sin(phi), libm::cos(theta)])
    }

    pub(crate) fn from_raw(v: [f64; 3]) -> Self {
        UnitVec(v)
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    /// Polar angle in `[0, π]`.
    pub fn theta(&self) -> f64 {
        libm::acos(self.0[2].clamp(-1.0, 1.0))
    }

    /// Azimuth in `(-π, π]`.
    pub fn phi(&self) -> f64 {
        libm::atan2(self.0[1], self.0[0])
    }

    pub fn dot(&self, other: &UnitVec) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }
}
