use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index tuple of length {found} does not match tensor rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("operation needs rank at least {min}, got {found}")]
    RankTooLow { min: usize, found: usize },
    #[error("invalid index pair ({0}, {1}) for a rank-{2} tensor")]
    InvalidPair(usize, usize, usize),
    #[error("delta product needs an even rank, got {0}")]
    OddRank(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("dimension must be at least {min}, got {found}")]
    DimTooSmall { min: usize, found: usize },
    #[error("tensor is not traceless (largest trace component {0:e})")]
    NotTraceless(f64),
    #[error("tensor is not symmetric (largest asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("vector is not of unit length (|n|^2 = {0})")]
    NotUnit(f64),
    #[error("generating function needs |q| < 1, got {0}")]
    GeneratingRadius(f64),
    #[error("matrix is not orthogonal (max |R^T R - I| = {0:e})")]
    NotOrthogonal(f64),
    #[error("order m = {m} out of range for degree l = {l}")]
    InvalidOrder { l: usize, m: i32 },
    #[error("u-vector label must be -1, 0 or 1, got {0}")]
    InvalidULabel(i32),
    #[error(
        "quadrature did not converge: estimate {estimate:e} changed by {change:e} on refinement"
    )]
    NonConvergence { estimate: f64, change: f64 },
    #[error("evaluation point too close to a pole (sin theta = {0})")]
    PoleProximity(f64),
    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("wave vector must be nonzero")]
    ZeroWaveVector,
    #[error("radial cutoffs must satisfy 0 < r_min < r_max, got [{0}, {1}]")]
    InvalidCutoffs(f64, f64),
    #[error("gamma integral indices must satisfy 0 <= m <= n <= M, got m={m}, n={n}, M={big_m}")]
    GammaIndexRange { m: usize, n: usize, big_m: usize },
    #[error("expected a real result, imaginary part up to {0:e}")]
    NotReal(f64),
    #[error("harmonic basis mismatch: {0} vs {1}")]
    BasisMismatch(&'static str, &'static str),
}
