//! File formats.
//!
//! Tensors are `{"rank", "dim", "components": {"xxy": value}}` with sorted
//! index strings as keys (`x`, `y`, `z` in three dimensions, `i1`...`in`
//! otherwise). Values are exact `"p/q"` strings, integers, or floats.
//! Missing components are zero.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use stf_core::multiset;
use stf_core::{
    AngularPolynomial, Basis, MultipoleExpansion, Rational, RealScalar, Scalar, SphCoeffs,
    StfTensor, SymTensor,
};

use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// A scalar read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => r.to_f64(),
            Number::Float(x) => *x,
        }
    }

    /// Exact value; floats convert without rounding.
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Exact(r) => Ok(r.clone()),
            Number::Float(x) => Rational::from_float(*x)
                .ok_or_else(|| CliError::Parse(format!("non-finite value {x}"))),
        }
    }

    fn parse(v: &Value) -> Result<Number> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Number::Exact(Rational::from_integer(i.into())))
                } else {
                    n.as_f64()
                        .map(Number::Float)
                        .ok_or_else(|| CliError::Parse(format!("unreadable number {n}")))
                }
            }
            Value::String(s) => {
                let s = s.trim();
                if let Ok(r) = Rational::from_str(s) {
                    return Ok(Number::Exact(r));
                }
                s.parse::<f64>()
                    .map(Number::Float)
                    .map_err(|_| CliError::Parse(format!("not a number: {s:?}")))
            }
            other => Err(CliError::Parse(format!("expected a number, found {other}"))),
        }
    }
}

/// A tensor read from a file, exact when every component was exact.
#[derive(Clone, Debug, PartialEq)]
pub enum TensorData {
    Exact(SymTensor<Rational>),
    Float(SymTensor<f64>),
}

impl TensorData {
    pub fn rank(&self) -> usize {
        match self {
            TensorData::Exact(t) => t.rank(),
            TensorData::Float(t) => t.rank(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TensorData::Exact(t) => t.dim(),
            TensorData::Float(t) => t.dim(),
        }
    }

    pub fn to_float(&self) -> SymTensor<f64> {
        match self {
            TensorData::Exact(t) => t.map(RealScalar::to_f64),
            TensorData::Float(t) => t.clone(),
        }
    }

    pub fn to_exact(&self) -> Result<SymTensor<Rational>> {
        match self {
            TensorData::Exact(t) => Ok(t.clone()),
            TensorData::Float(t) => {
                let comps = t
                    .components()
                    .iter()
                    .map(|x| Number::Float(*x).to_rational())
                    .collect::<Result<Vec<_>>>()?;
                Ok(SymTensor::from_components(t.rank(), t.dim(), comps)?)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TensorData::Exact(_))
    }
}

/// Parses a sorted or unsorted index string into an exponent multiset.
pub fn parse_index(key: &str, rank: usize, dim: usize) -> Result<Vec<u32>> {
    let mut slots = Vec::new();
    if dim == 3 {
        for c in key.chars() {
            slots.push(match c {
                'x' => 0,
                'y' => 1,
                'z' => 2,
                _ => {
                    return Err(CliError::Argument(format!(
                        "index {key:?}: unknown letter {c:?}"
                    )))
                }
            });
        }
    } else {
        let mut rest = key;
        while !rest.is_empty() {
            let body = rest.strip_prefix('i').ok_or_else(|| {
                CliError::Argument(format!("index {key:?}: expected i<k> labels"))
            })?;
            let digits = body.chars().take_while(char::is_ascii_digit).count();
            let k: usize = body[..digits]
                .parse()
                .map_err(|_| CliError::Argument(format!("index {key:?}: expected i<k> labels")))?;
            if k == 0 || k > dim {
                return Err(CliError::Argument(format!(
                    "index {key:?}: i{k} outside dimension {dim}"
                )));
            }
            slots.push(k - 1);
            rest = &body[digits..];
        }
    }
    if slots.len() != rank {
        return Err(CliError::Argument(format!(
            "index {key:?} has {} slots but the tensor has rank {rank}",
            slots.len()
        )));
    }
    Ok(multiset::from_indices(&slots, dim)?)
}

pub fn format_index(exps: &[u32]) -> String {
    let dim = exps.len();
    let mut out = String::new();
    for (slot, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            if dim == 3 {
                out.push(['x', 'y', 'z'][slot]);
            } else {
                out.push_str(&format!("i{}", slot + 1));
            }
        }
    }
    out
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| CliError::Parse(format!("missing field {name:?}")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::Parse(format!("{what} must be a JSON object")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::Parse(format!("{what} must be a non-negative integer")))
}

pub fn tensor_from_value(v: &Value) -> Result<TensorData> {
    let obj = as_object(v, "tensor")?;
    let rank = as_usize(field(obj, "rank")?, "rank")?;
    let dim = match obj.get("dim") {
        Some(d) => as_usize(d, "dim")?,
        None => 3,
    };
    if dim == 0 {
        return Err(CliError::Argument("dimension must be positive".into()));
    }
    let comps = as_object(field(obj, "components")?, "components")?;
    let mut seen: BTreeMap<Vec<u32>, Number> = BTreeMap::new();
    for (key, value) in comps {
        let exps = parse_index(key, rank, dim)?;
        let n = Number::parse(value)?;
        if seen.insert(exps.clone(), n).is_some() {
            return Err(CliError::Parse(format!(
                "component {} given more than once",
                format_index(&exps)
            )));
        }
    }
    if seen.values().all(|n| matches!(n, Number::Exact(_))) {
        Ok(TensorData::Exact(SymTensor::from_fn(
            rank,
            dim,
            |e| match seen.get(e) {
                Some(Number::Exact(r)) => r.clone(),
                _ => Rational::from_integer(0.into()),
            },
        )))
    } else {
        Ok(TensorData::Float(SymTensor::from_fn(rank, dim, |e| {
            seen.get(e).map_or(0.0, Number::to_f64)
        })))
    }
}

/// Scalars that can be written to a file.
pub trait WriteScalar: Scalar {
    fn to_json(&self) -> Value;
}

impl WriteScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl WriteScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

pub fn tensor_to_value<S: WriteScalar>(t: &SymTensor<S>) -> Value {
    let comps: Map<String, Value> = t
        .iter()
        .map(|(e, v)| (format_index(&e), v.to_json()))
        .collect();
    json!({ "rank": t.rank(), "dim": t.dim(), "components": comps })
}

/// A polynomial read from a file.
#[derive(Clone, Debug)]
pub enum PolynomialData {
    Exact(AngularPolynomial<Rational>),
    Float(AngularPolynomial<f64>),
}

impl PolynomialData {
    pub fn to_exact(&self) -> Result<AngularPolynomial<Rational>> {
        match self {
            PolynomialData::Exact(p) => Ok(p.clone()),
            PolynomialData::Float(p) => {
                let terms = p
                    .terms()
                    .iter()
                    .map(|t| TensorData::Float(t.clone()).to_exact())
                    .collect::<Result<Vec<_>>>()?;
                Ok(AngularPolynomial::from_terms(terms)?)
            }
        }
    }

    pub fn to_float(&self) -> AngularPolynomial<f64> {
        match self {
            PolynomialData::Exact(p) => AngularPolynomial::from_terms(
                p.terms()
                    .iter()
                    .map(|t| t.map(RealScalar::to_f64))
                    .collect(),
            )
            .expect("dim 3"),
            PolynomialData::Float(p) => p.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PolynomialData::Exact(_))
    }
}

pub fn polynomial_from_value(v: &Value) -> Result<PolynomialData> {
    let obj = as_object(v, "polynomial")?;
    let terms = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| CliError::Parse("terms must be an array".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for term in terms {
        let t = as_object(term, "term")?;
        let rank = as_usize(field(t, "rank")?, "rank")?;
        let tensor = tensor_from_value(field(t, "tensor")?)?;
        if tensor.rank() != rank {
            return Err(CliError::Argument(format!(
                "term declares rank {rank} but its tensor has rank {}",
                tensor.rank()
            )));
        }
        if tensor.dim() != 3 {
            return Err(CliError::Argument(format!(
                "polynomial terms must be three-dimensional, got dim {}",
                tensor.dim()
            )));
        }
        parsed.push(tensor);
    }
    if parsed.iter().all(TensorData::is_exact) {
        let terms = parsed
            .iter()
            .map(|t| t.to_exact())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolynomialData::Exact(AngularPolynomial::from_terms(terms)?))
    } else {
        let terms = parsed.iter().map(TensorData::to_float).collect();
        Ok(PolynomialData::Float(AngularPolynomial::from_terms(terms)?))
    }
}

pub fn polynomial_to_value<S: WriteScalar>(p: &AngularPolynomial<S>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|t| json!({ "rank": t.rank(), "tensor": tensor_to_value(t) }))
        .collect();
    json!({ "terms": terms })
}

/// An expansion read from a file.
#[derive(Clone, Debug)]
pub enum ExpansionData {
    Exact(MultipoleExpansion<Rational>),
    Float(MultipoleExpansion<f64>),
}

impl ExpansionData {
    pub fn to_float(&self) -> MultipoleExpansion<f64> {
        match self {
            ExpansionData::Exact(e) => e.map(RealScalar::to_f64),
            ExpansionData::Float(e) => e.clone(),
        }
    }
}

/// Reads `{"coeffs": {"<l>": tensor}}`. Every tensor must have rank `l` and
/// be traceless: exactly for exact input, within `tol` for floats.
pub fn expansion_from_value(v: &Value, tol: f64) -> Result<ExpansionData> {
    let obj = as_object(v, "expansion")?;
    let coeffs = as_object(field(obj, "coeffs")?, "coeffs")?;
    let mut parsed = Vec::with_capacity(coeffs.len());
    for (key, value) in coeffs {
        let l: usize = key
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("degree key {key:?} is not an integer")))?;
        let t = tensor_from_value(value)?;
        if t.rank() != l || t.dim() != 3 {
            return Err(CliError::Argument(format!(
                "degree {l} needs a rank-{l} tensor in three dimensions, got rank {} dim {}",
                t.rank(),
                t.dim()
            )));
        }
        parsed.push((l, t));
    }
    if parsed.iter().all(|(_, t)| t.is_exact()) {
        let mut e = MultipoleExpansion::new();
        for (l, t) in parsed {
            e.insert(l, StfTensor::try_from_sym(t.to_exact()?, 0.0)?)?;
        }
        Ok(ExpansionData::Exact(e))
    } else {
        let mut e = MultipoleExpansion::new();
        for (l, t) in parsed {
            e.insert(l, StfTensor::try_from_sym(t.to_float(), tol)?)?;
        }
        Ok(ExpansionData::Float(e))
    }
}

pub fn expansion_to_value<S: WriteScalar>(e: &MultipoleExpansion<S>) -> Value {
    let coeffs: Map<String, Value> = e
        .iter()
        .map(|(l, t)| (l.to_string(), tensor_to_value(t.as_sym())))
        .collect();
    json!({ "coeffs": coeffs })
}

/// Reads `{"basis": "complex"|"real", "coeffs": {"<l>,<m>": [re, im]}}`.
pub fn sph_from_value(v: &Value) -> Result<SphCoeffs> {
    let obj = as_object(v, "coefficients")?;
    let name = field(obj, "basis")?
        .as_str()
        .ok_or_else(|| CliError::Parse("basis must be a string".into()))?;
    let basis =
        Basis::from_name(name).ok_or_else(|| CliError::Parse(format!("unknown basis {name:?}")))?;
    let mut out = SphCoeffs::new(basis);
    let mut seen = std::collections::BTreeSet::new();
    for (key, value) in as_object(field(obj, "coeffs")?, "coeffs")? {
        let (l, m) = key
            .split_once(',')
            .and_then(|(l, m)| {
                Some((
                    l.trim().parse::<usize>().ok()?,
                    m.trim().parse::<i32>().ok()?,
                ))
            })
            .ok_or_else(|| CliError::Parse(format!("coefficient key {key:?} is not \"l,m\"")))?;
        let pair = value
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::Parse(format!("coefficient {key:?} must be [re, im]")))?;
        let re = Number::parse(&pair[0])?.to_f64();
        let im = Number::parse(&pair[1])?.to_f64();
        if !seen.insert((l, m)) {
            return Err(CliError::Parse(format!(
                "coefficient ({l},{m}) given more than once"
            )));
        }
        out.insert(l, m, Complex64::new(re, im))?;
    }
    Ok(out)
}

pub fn sph_to_value(c: &SphCoeffs) -> Value {
    let coeffs: Map<String, Value> = c
        .iter()
        .map(|((l, m), v)| (format!("{l},{m}"), json!([v.re, v.im])))
        .collect();
    json!({ "basis": c.basis().name(), "coeffs": coeffs })
}

/// A 3×3 matrix given either as nested arrays or as a rank-2 tensor.
pub fn matrix_from_value(v: &Value) -> Result<[[f64; 3]; 3]> {
    if let Some(rows) = v.as_array() {
        let mut m = [[0.0; 3]; 3];
        if rows.len() != 3 {
            return Err(CliError::Argument(format!(
                "matrix needs 3 rows, got {}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| CliError::Parse("matrix rows must be arrays".into()))?;
            if row.len() != 3 {
                return Err(CliError::Argument(format!(
                    "matrix row {i} has {} entries",
                    row.len()
                )));
            }
            for (j, x) in row.iter().enumerate() {
                m[i][j] = Number::parse(x)?.to_f64();
            }
        }
        return Ok(m);
    }
    let t = tensor_from_value(v)?;
    if t.rank() != 2 || t.dim() != 3 {
        return Err(CliError::Argument(format!(
            "expected a rank-2 tensor in three dimensions, got rank {} dim {}",
            t.rank(),
            t.dim()
        )));
    }
    let dense = t.to_float().to_dense();
    Ok([
        [dense[0], dense[1], dense[2]],
        [dense[3], dense[4], dense[5]],
        [dense[6], dense[7], dense[8]],
    ])
}
