//! Verification suites: analytic results against the numerical oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stf_core::harmonics::{basis_tensor_in, completeness_tensor};
use stf_core::legendre::{leading_coefficient, legendre_value};
use stf_core::maxwell::{
    angular_integral_monomial, link_to_legendre, maxwell_eval, orthogonality_tensor,
    recurrence_check,
};
use stf_core::multiset::compositions;
use stf_core::oracle::{
    fd_angular_laplacian, unit_vector_integral_tensor, CompensatedSum, SphereQuadrature,
};
use stf_core::sym_tensor::stf_projector;
use stf_core::{Basis, RealScalar, StfTensor, UnitVec};

use crate::config::{Config, Report};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orthogonality,
    Recurrence,
    Laplacian,
    Eq19,
    Basis,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Recurrence => "recurrence",
            Suite::Laplacian => "laplacian",
            Suite::Eq19 => "eq19",
            Suite::Basis => "basis",
        }
    }
}

/// Result for one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub l: usize,
    pub residual: f64,
    /// Error ratio under step halving (Laplacian suite only).
    pub ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub suite: Suite,
    pub lmax: usize,
    pub tolerance: f64,
    pub rows: Vec<Row>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn worst_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn report(&self) -> Report {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = json!({ "l": r.l, "residual": r.residual, "pass": r.pass });
                if let Some(ratio) = r.ratio {
                    row["ratio"] = json!(ratio);
                }
                row
            })
            .collect();
        let mut report = Report::new();
        report
            .push("suite", self.suite.name())
            .push("lmax", self.lmax)
            .push("tolerance", self.tolerance)
            .push("rows", rows)
            .push("pass", self.passed());
        report
    }
}

const DIRECTIONS: usize = 50;
const SEED: u64 = 0x0a11;

/// Finite-difference step and evaluation point of the Laplacian suite.
const LAPLACIAN_STEP: f64 = 0.02;
const LAPLACIAN_POINT: (f64, f64) = (1.1, 0.7);
/// Accepted range of the error ratio under `h -> h/2`.
const RATIO_RANGE: (f64, f64) = (3.5, 4.5);
/// Below this the finite-difference error is rounding noise and no ratio is
/// meaningful (the constant `l = 0` multipole).
const LAPLACIAN_FLOOR: f64 = 1e-9;

pub fn run(suite: Suite, lmax: usize, cfg: &Config) -> Result<Verification> {
    let tol = cfg.tolerance;
    let rows = match suite {
        Suite::Eq19 => monomial_integrals(lmax),
        Suite::Orthogonality => orthogonality(lmax, cfg),
        Suite::Recurrence => recurrence(lmax, tol)?,
        Suite::Laplacian => laplacian(lmax)?,
        Suite::Basis => basis(lmax, tol)?,
    };
    Ok(Verification {
        suite,
        lmax,
        tolerance: tol,
        rows,
    })
}

fn directions() -> Vec<UnitVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..DIRECTIONS)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            UnitVec::from_angles(z.acos(), phi)
        })
        .collect()
}

/// Closed-form monomial integrals against the Gamma-function assembly;
/// exact, so the residual is the largest difference and must be zero.
fn monomial_integrals(lmax: usize) -> Vec<Row> {
    (0..=lmax)
        .map(|l| {
            let assembled = unit_vector_integral_tensor(l);
            let residual = compositions(l, 3)
                .iter()
                .map(|e| {
                    (angular_integral_monomial(e) - assembled.get(e).clone())
                        .to_f64()
                        .abs()
                })
                .fold(0.0, f64::max);
            Row {
                l,
                residual,
                ratio: None,
                pass: residual == 0.0,
            }
        })
        .collect()
}

fn orthogonality(lmax: usize, cfg: &Config) -> Vec<Row> {
    let quad = SphereQuadrature::for_degree(cfg.degree_or(2 * lmax));
    let nodes: Vec<(Vec<StfTensor<f64>>, f64)> = quad
        .nodes()
        .map(|(n, w)| ((0..=lmax).map(|l| maxwell_eval(l, &n)).collect(), w))
        .collect();
    (0..=lmax)
        .map(|l| {
            let mut residual: f64 = 0.0;
            for l2 in 0..=lmax {
                let exact = orthogonality_tensor(l, l2);
                for a in compositions(l, 3) {
                    for b in compositions(l2, 3) {
                        let mut acc = CompensatedSum::new();
                        for (p, w) in &nodes {
                            acc.add(p[l].get(&a) * p[l2].get(&b) * w);
                        }
                        let q: f64 = acc.value();
                        residual = residual.max((q - exact.get(&a, &b).to_f64()).abs());
                    }
                }
            }
            Row {
                l,
                residual,
                ratio: None,
                pass: residual <= cfg.tolerance,
            }
        })
        .collect()
}

/// Both recurrences and the link to Legendre polynomials at fixed random
/// directions.
fn recurrence(lmax: usize, tol: f64) -> Result<Vec<Row>> {
    let dirs = directions();
    let mut rows = Vec::new();
    for l in 1..=lmax.max(1) {
        let lead = leading_coefficient(l).to_f64();
        let mut residual: f64 = 0.0;
        for (i, n) in dirs.iter().enumerate() {
            let r = recurrence_check(l, n)?;
            let s = &dirs[(i + 1) % dirs.len()];
            let p = legendre_value(l, n.dot(s));
            let (a, b) = link_to_legendre(l, n, s);
            residual = residual
                .max(r.three_term)
                .max(r.contraction)
                .max((a - p).abs())
                .max((b - lead * p).abs() / lead);
        }
        rows.push(Row {
            l,
            residual,
            ratio: None,
            pass: residual <= tol,
        });
    }
    Ok(rows)
}

fn laplacian(lmax: usize) -> Result<Vec<Row>> {
    let (theta, phi) = LAPLACIAN_POINT;
    let mut rows = Vec::new();
    for l in 0..=lmax {
        let eigen = -((l * (l + 1)) as f64);
        let mut residual: f64 = 0.0;
        let mut worst_ratio: Option<f64> = None;
        let mut pass = true;
        for e in compositions(l, 3) {
            let f = |t: f64, p: f64| *maxwell_eval(l, &UnitVec::from_angles(t, p)).get(&e);
            let target = eigen * f(theta, phi);
            let coarse = (fd_angular_laplacian(f, theta, phi, LAPLACIAN_STEP)? - target).abs();
            let fine = (fd_angular_laplacian(f, theta, phi, LAPLACIAN_STEP / 2.0)? - target).abs();
            residual = residual.max(fine);
            if coarse < LAPLACIAN_FLOOR {
                continue;
            }
            let ratio = coarse / fine;
            if !(RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio) {
                pass = false;
            }
            let off = |r: f64| (r - 4.0).abs();
            if worst_ratio.is_none_or(|w| off(ratio) > off(w)) {
                worst_ratio = Some(ratio);
            }
        }
        rows.push(Row {
            l,
            residual,
            ratio: worst_ratio,
            pass,
        });
    }
    Ok(rows)
}

/// Gram matrix and completeness of both basis families: exact checks
/// decide, the residual is the floating-point deviation.
fn basis(lmax: usize, tol: f64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for l in 0..=lmax {
        let mut exact_ok = true;
        let mut residual: f64 = 0.0;
        let projector = stf_projector(l);
        for b in [Basis::Complex, Basis::Real] {
            let members = (-(l as i32)..=l as i32)
                .map(|m| basis_tensor_in(b, l, m))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            for (i, y) in members.iter().enumerate() {
                exact_ok &= y.norm_exact() == num_traits::One::one();
                for (j, z) in members.iter().enumerate() {
                    if i != j {
                        exact_ok &= y.is_orthogonal_to(z)?;
                    }
                    let expected = if i == j { 1.0 } else { 0.0 };
                    residual = residual.max((y.inner(z)? - expected).norm());
                }
            }
            let complete = completeness_tensor(l, b);
            for (row_c, row_p) in complete.rows().iter().zip(projector.rows()) {
                for ((_, c), (_, p)) in row_c.iter().zip(row_p.iter()) {
                    exact_ok &= c.im == num_traits::Zero::zero() && c.re == *p;
                    residual =
                        residual.max((c.re.to_f64() - p.to_f64()).abs().max(c.im.to_f64().abs()));
                }
            }
        }
        rows.push(Row {
            l,
            residual,
            ratio: None,
            pass: exact_ok && residual <= tol,
        });
    }
    Ok(rows)
}
