//! Command implementations. Each returns an [`Outcome`]; writing files and
//! streams is left to [`Outcome::emit`].

use std::fs;
use std::io::Write;
use std::path::Path;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stf_core::harmonics::{harmonic_eval, sph_to_stf_real, stf_to_sph};
use stf_core::maxwell::{
    expand, expand_truncated, integrate as integrate_exact, integrate_product, maxwell_eval,
    quadrupole_fourier_demo,
};
use stf_core::oracle::SphereQuadrature;
use stf_core::{Basis, RealScalar, SymTensor, UnitVec};

use crate::config::{Config, Report};
use crate::error::CliError;
use crate::json::{self, TensorData};

type Result<T> = std::result::Result<T, CliError>;

/// Number of random directions used for reconstruction residuals.
const SAMPLE_POINTS: usize = 100;
const SAMPLE_SEED: u64 = 0x5eed;

/// What a command produced.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    /// File contents, written to the output path or to stdout.
    pub data: Option<Value>,
    pub report: Report,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn report(report: Report) -> Self {
        Outcome {
            data: None,
            report,
            warnings: Vec::new(),
        }
    }

    /// Writes the data to `output` (or `out` when absent), warnings to
    /// `err`, and the report to `out`, or to `err` when `out` already
    /// carries the data.
    pub fn emit(
        &self,
        output: Option<&Path>,
        cfg: &Config,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<()> {
        for w in &self.warnings {
            writeln!(err, "warning: {w}")?;
        }
        let mut data_on_stdout = false;
        if let Some(data) = &self.data {
            let text = serde_json::to_string_pretty(data)?;
            match output {
                Some(path) => fs::write(path, text + "\n")?,
                None => {
                    writeln!(out, "{text}")?;
                    data_on_stdout = true;
                }
            }
        }
        if data_on_stdout {
            self.report.write(cfg.format, err)?;
        } else {
            self.report.write(cfg.format, out)?;
        }
        Ok(())
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Argument(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Parses `"x,y,z"`.
pub fn parse_vector(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Argument(format!(
            "expected three comma-separated numbers, got {s:?}"
        )));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .parse()
            .map_err(|_| CliError::Argument(format!("not a number: {p:?}")))?;
    }
    Ok(v)
}

fn random_directions(count: usize) -> Vec<UnitVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    (0..count)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            UnitVec::from_angles(z.acos(), phi)
        })
        .collect()
}

pub fn detrace(input: &Path) -> Result<Outcome> {
    let t = json::tensor_from_value(&read_json(input)?)?;
    let mut report = Report::new();
    report.push("rank", t.rank()).push("dim", t.dim());
    let data = match &t {
        TensorData::Exact(t) => {
            let d = if t.dim() == 3 {
                t.detrace()?.into_sym()
            } else {
                t.detrace_general()?
            };
            let mut max = stf_core::Rational::zero();
            if d.rank() >= 2 {
                for c in d.trace_k(1)?.components() {
                    max = max.max(c.abs());
                }
            }
            report
                .push("exact", true)
                .push("max_trace", max.to_string());
            json::tensor_to_value(&d)
        }
        TensorData::Float(t) => {
            let d = if t.dim() == 3 {
                t.detrace()?.into_sym()
            } else {
                t.detrace_general()?
            };
            report.push("exact", false).push("max_trace", d.max_trace());
            json::tensor_to_value(&d)
        }
    };
    Ok(Outcome {
        data: Some(data),
        report,
        warnings: Vec::new(),
    })
}

pub fn expand_file(input: &Path, lmax: Option<usize>, cfg: &Config) -> Result<Outcome> {
    let poly = json::polynomial_from_value(&read_json(input)?)?;
    let f = poly.to_exact()?;
    let max_rank = f.max_rank().unwrap_or(0);
    let (e, dropped) = match lmax {
        Some(l) => expand_truncated(&f, l),
        None => (expand(&f), false),
    };
    let e = e.without_zeros();
    let mut warnings = Vec::new();
    if dropped {
        warnings.push(format!(
            "lmax {} is below the polynomial rank {max_rank}; higher degrees were dropped",
            lmax.unwrap_or(0)
        ));
    }
    let ef = e.map(RealScalar::to_f64);
    let ff = poly.to_float();

    let analytic = e.parseval_exact(&e);
    let direct = integrate_product(&f, &f);
    let degree = cfg.degree_or(2 * max_rank);
    let quad = SphereQuadrature::for_degree(degree);
    let reconstructed = quad.integrate(|n| {
        let v = ef.reconstruct(n);
        v * v
    });
    let residual = random_directions(SAMPLE_POINTS)
        .iter()
        .map(|n| (ef.reconstruct(n) - ff.eval(n)).abs())
        .fold(0.0, f64::max);

    let mut report = Report::new();
    report
        .push("degrees", e.iter().map(|(l, _)| l).collect::<Vec<_>>())
        .push("truncated", dropped)
        .push("parseval_exact", analytic.to_string())
        .push("parseval", analytic.to_f64())
        .push("integral_f_squared", direct.to_string())
        .push("parseval_reconstruction", reconstructed)
        .push(
            "parseval_difference",
            (analytic.to_f64() - reconstructed).abs(),
        )
        .push("reconstruction_residual", residual);
    let data = if poly.is_exact() {
        json::expansion_to_value(&e)
    } else {
        json::expansion_to_value(&ef)
    };
    Ok(Outcome {
        data: Some(data),
        report,
        warnings,
    })
}

/// Target of a conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Stf,
    Sph,
}

pub fn convert(input: &Path, to: Target, basis: Option<Basis>, cfg: &Config) -> Result<Outcome> {
    let value = read_json(input)?;
    let mut report = Report::new();
    let data = match to {
        Target::Sph => {
            let e = json::expansion_from_value(&value, cfg.tolerance)?.to_float();
            let basis = basis.unwrap_or(Basis::Complex);
            let c = stf_to_sph(&e, basis);
            report
                .push("basis", basis.name())
                .push("degrees", e.iter().map(|(l, _)| l).collect::<Vec<_>>())
                .push("coefficients", c.len());
            json::sph_to_value(&c)
        }
        Target::Stf => {
            let c = json::sph_from_value(&value)?;
            if let Some(b) = basis {
                if b != c.basis() {
                    return Err(CliError::Argument(format!(
                        "file is in the {} basis but --basis {} was given",
                        c.basis().name(),
                        b.name()
                    )));
                }
            }
            let e = sph_to_stf_real(&c, cfg.tolerance)?;
            report
                .push("basis", c.basis().name())
                .push("degrees", e.iter().map(|(l, _)| l).collect::<Vec<_>>());
            json::expansion_to_value(&e)
        }
    };
    Ok(Outcome {
        data: Some(data),
        report,
        warnings: Vec::new(),
    })
}

/// Evaluates a file at `n`: a polynomial, an expansion, spherical-harmonic
/// coefficients, or a tensor `T` (giving `T · n^{⊗l}`). Without a file,
/// `multipole` selects `P^(l)(n)`.
pub fn eval(
    input: Option<&Path>,
    n: [f64; 3],
    multipole: Option<usize>,
    cfg: &Config,
) -> Result<Outcome> {
    let n = UnitVec::new(n[0], n[1], n[2])?;
    let mut report = Report::new();
    report
        .push("direction", json!(n.as_array()))
        .push("theta", n.theta())
        .push("phi", n.phi());
    match (input, multipole) {
        (Some(_), Some(_)) => Err(CliError::Argument(
            "give either a file or --multipole, not both".into(),
        )),
        (None, None) => Err(CliError::Argument(
            "nothing to evaluate: give a file or --multipole".into(),
        )),
        (None, Some(l)) => {
            let p = maxwell_eval(l, &n);
            report.push("l", l).push("max_trace", p.max_trace());
            Ok(Outcome {
                data: Some(json::tensor_to_value(p.as_sym())),
                report,
                warnings: Vec::new(),
            })
        }
        (Some(path), None) => {
            let value = read_json(path)?;
            let obj = value
                .as_object()
                .ok_or_else(|| CliError::Parse("input must be a JSON object".into()))?;
            if obj.contains_key("terms") {
                let f = json::polynomial_from_value(&value)?.to_float();
                report.push("kind", "polynomial").push("value", f.eval(&n));
            } else if obj.contains_key("basis") {
                let c = json::sph_from_value(&value)?;
                let mut total = num_complex::Complex64::new(0.0, 0.0);
                for ((l, m), v) in c.iter() {
                    total += v * harmonic_eval(c.basis(), l, m, &n)?;
                }
                report
                    .push("kind", "harmonics")
                    .push("re", total.re)
                    .push("im", total.im);
            } else if obj.contains_key("coeffs") {
                let e = json::expansion_from_value(&value, cfg.tolerance)?.to_float();
                report
                    .push("kind", "expansion")
                    .push("value", e.reconstruct(&n));
            } else {
                let t = json::tensor_from_value(&value)?.to_float();
                if t.dim() != 3 {
                    return Err(CliError::Argument(format!(
                        "tensor has dimension {}, need 3",
                        t.dim()
                    )));
                }
                let v = t.contract_full(&SymTensor::outer_power(&n.as_array(), t.rank()))?;
                report.push("kind", "tensor").push("value", v);
            }
            Ok(Outcome::report(report))
        }
    }
}

/// `∫ f dΩ`, or `∫ f g dΩ` with a second file, exactly and by quadrature.
pub fn integrate(input: &Path, with: Option<&Path>, cfg: &Config) -> Result<Outcome> {
    let f = json::polynomial_from_value(&read_json(input)?)?;
    let g = with
        .map(|p| json::polynomial_from_value(&read_json(p)?))
        .transpose()?;
    let fe = f.to_exact()?;
    let ff = f.to_float();
    let mut degree = fe.max_rank().unwrap_or(0);
    let exact = match &g {
        Some(g) => {
            let ge = g.to_exact()?;
            degree += ge.max_rank().unwrap_or(0);
            integrate_product(&fe, &ge)
        }
        None => integrate_exact(&fe),
    };
    let gf = g.map(|g| g.to_float());
    let quad = SphereQuadrature::for_degree(cfg.degree_or(degree));
    let numeric = quad.integrate(|n| ff.eval(n) * gf.as_ref().map_or(1.0, |g| g.eval(n)));
    let mut report = Report::new();
    report
        .push("exact", exact.to_string())
        .push("value", exact.to_f64())
        .push("quadrature", numeric)
        .push("quadrature_degree", quad.exact_degree())
        .push("difference", (exact.to_f64() - numeric).abs());
    Ok(Outcome::report(report))
}

pub fn demo_quadrupole(q: &Path, k: [f64; 3], r_min: f64, r_max: f64) -> Result<Outcome> {
    let q = json::matrix_from_value(&read_json(q)?)?;
    let out = quadrupole_fourier_demo(q, k, r_min, r_max)?;
    let checkpoints: Vec<Value> = out
        .checkpoints
        .iter()
        .map(|c| json!({ "r_max": c.r_max, "numeric": c.numeric }))
        .collect();
    let mut report = Report::new();
    report
        .push("numeric", out.numeric)
        .push("closed_form", out.closed_form)
        .push("relative_error", out.relative_error)
        .push("r_min", r_min)
        .push("r_max", r_max)
        .push("checkpoints", checkpoints);
    Ok(Outcome::report(report))
}
