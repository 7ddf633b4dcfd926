use alloc::vec;

use crate::sym_tensor::{StfTensor, SymTensor};
use crate::{Error, Result};

use super::UnitVec;

const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

/// Orthogonal 3×3 matrix, rows first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation([[f64; 3]; 3]);

impl Rotation {
    /// Accepts `m` when `max |mᵀm - I| <= 1e-10`.
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                let dev = libm::fabs(dot - target);
                if !(dev <= worst) {
                    worst = dev;
                }
            }
        }
        if !(worst <= ORTHOGONALITY_TOLERANCE) {
            return Err(Error::NotOrthogonal(worst));
        }
        Ok(Rotation(m))
    }

    pub fn identity() -> Self {
        Rotation([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Rotation of the unit quaternion along `(w, x, y, z)`; the input is
    /// normalized first.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = libm::sqrt(w * w + x * x + y * y + z * z);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotOrthogonal(f64::NAN));
        }
        let (w, x, y, z) = (w / norm, x / norm, y / norm, z / norm);
        Rotation::new([
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ])
    }

    /// Right-handed rotation by `angle` about `axis`.
    pub fn about_axis(axis: &UnitVec, angle: f64) -> Self {
        let half = 0.5 * angle;
        let s = libm::sin(half);
        Rotation::from_quaternion(libm::cos(half), axis.x() * s, axis.y() * s, axis.z() * s)
            .expect("unit quaternion")
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.0
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }

    pub fn apply_unit(&self, n: &UnitVec) -> UnitVec {
        UnitVec::from_raw(self.apply(n.as_array()))
    }
}

/// `T'_{i1...il} = R_{i1 j1} ... R_{il jl} T_{j1...jl}`.
pub fn rotate(l: usize, r: &Rotation, t: &StfTensor<f64>) -> Result<StfTensor<f64>> {
    if t.rank() != l {
        return Err(Error::RankMismatch {
            expected: l,
            found: t.rank(),
        });
    }
    let mut dense = t.to_dense();
    let mut next = vec![0.0; dense.len()];
    let m = r.matrix();
    // one mode at a time; `stride` is the weight of the mode being rotated
    let mut stride = 1;
    for _ in 0..l {
        for (flat, out) in next.iter_mut().enumerate() {
            let i = (flat / stride) % 3;
            let base = flat - i * stride;
            *out = (0..3).map(|j| m[i][j] * dense[base + j * stride]).sum();
        }
        core::mem::swap(&mut dense, &mut next);
        stride *= 3;
    }
    let sym = SymTensor::from_dense_symmetric(l, 3, &dense)?;
    Ok(StfTensor::new_unchecked(sym))
}
