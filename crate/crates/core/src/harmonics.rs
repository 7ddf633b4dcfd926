//! Basis tensors `𝒴^(l,m)` and the link between trace-free coefficients and
//! spherical harmonics.
//!
//! `𝒴^(l,m) = sqrt(C(2l, l-m)/2^l) · {u^(±1) ... u^(±1) u^(0) ... u^(0)}` with
//! `|m|` null vectors. The square root is kept apart: a [`BasisTensor`]
//! stores its square as a rational next to an exact Gaussian-rational
//! tensor, so orthonormality and completeness can be checked exactly.
//!
//! With `K_l = sqrt(4π/(2l+1) · C(2l,l)/2^l)`:
//!
//! ```text
//! f_lm   = K_l · 𝒴^(l,m) · f^(l)
//! f^(l)  = Σ_m f_lm / K_l · conj(𝒴^(l,m))
//! Y_lm   = P^(l)(n) · conj(𝒴^(l,m)) / K_l
//! ```

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use crate::exact::{binomial, factorial, legendre_leading, Rational, RealScalar, Scalar};
use crate::maxwell::{maxwell_eval, MultipoleExpansion, UnitVec};
use crate::sym_tensor::{PairedTensor, StfTensor, SymTensor};
use crate::{Error, Result};

type Gaussian = Complex<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// `𝒴^(l,m)` themselves.
    Complex,
    /// `sqrt(2) Re 𝒴^(l,m)` for `m > 0`, `sqrt(2) Im 𝒴^(l,|m|)` for `m < 0`,
    /// and `𝒴^(l,0)`.
    Real,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Complex => "complex",
            Basis::Real => "real",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "complex" => Some(Basis::Complex),
            "real" => Some(Basis::Real),
            _ => None,
        }
    }
}

fn gaussian(re: i64, im: i64) -> Gaussian {
    Complex::new(
        Rational::from(BigInt::from(re)),
        Rational::from(BigInt::from(im)),
    )
}

/// `u^(1) = (-1, i, 0)`, `u^(0) = (0, 0, 1)`, `u^(-1) = (1, i, 0)`.
pub fn u_vector(m: i32) -> Result<[Complex<Rational>; 3]> {
    match m {
        1 => Ok([gaussian(-1, 0), gaussian(0, 1), gaussian(0, 0)]),
        0 => Ok([gaussian(0, 0), gaussian(0, 0), gaussian(1, 0)]),
        -1 => Ok([gaussian(1, 0), gaussian(0, 1), gaussian(0, 0)]),
        _ => Err(Error::InvalidULabel(m)),
    }
}

fn to_complex64(c: &Gaussian) -> Complex64 {
    Complex64::new(c.re.to_f64(), c.im.to_f64())
}

/// `sqrt(norm_sq) · tensor`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisTensor {
    l: usize,
    m: i32,
    basis: Basis,
    norm_sq: Rational,
    tensor: StfTensor<Gaussian>,
    numeric: StfTensor<Complex64>,
}

impl BasisTensor {
    fn from_parts(
        l: usize,
        m: i32,
        basis: Basis,
        norm_sq: Rational,
        tensor: StfTensor<Gaussian>,
    ) -> Self {
        let scale = libm::sqrt(norm_sq.to_f64());
        let numeric = tensor.map(|c| to_complex64(c) * scale);
        BasisTensor {
            l,
            m,
            basis,
            norm_sq,
            tensor,
            numeric,
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Square of the scalar prefactor.
    pub fn norm_sq(&self) -> &Rational {
        &self.norm_sq
    }

    /// The tensor without its prefactor.
    pub fn unscaled(&self) -> &StfTensor<Complex<Rational>> {
        &self.tensor
    }

    pub fn to_complex(&self) -> &StfTensor<Complex64> {
        &self.numeric
    }

    /// `conj(self) · other`.
    pub fn inner(&self, other: &BasisTensor) -> Result<Complex64> {
        self.numeric.contract_conj(&other.numeric)
    }

    /// `conj(self) · self`, exact. Equals one for a normalized tensor.
    pub fn norm_exact(&self) -> Rational {
        let dot = self.tensor.contract_conj(&self.tensor).expect("same rank");
        &self.norm_sq * dot.re
    }

    /// `conj(self) · other == 0`, exact.
    pub fn is_orthogonal_to(&self, other: &BasisTensor) -> Result<bool> {
        Ok(self.tensor.contract_conj(&other.tensor)?.is_zero())
    }

    /// Componentwise `conj(self) == sign · other`, exact, for prefactors
    /// that agree.
    pub fn is_conjugate_of(&self, other: &BasisTensor, sign: i32) -> bool {
        if self.norm_sq != other.norm_sq || self.l != other.l {
            return false;
        }
        let s = Rational::from(BigInt::from(sign));
        self.tensor
            .components()
            .iter()
            .zip(other.tensor.components())
            .all(|(a, b)| Scalar::conj(a) == b.clone() * Complex::new(s.clone(), Rational::zero()))
    }
}

fn build_complex(l: usize, m: i32) -> BasisTensor {
    let am = m.unsigned_abs() as usize;
    let u = u_vector(if m >= 0 { 1 } else { -1 }).expect("valid label");
    let u0 = u_vector(0).expect("valid label");
    let product = SymTensor::outer_power(&u, am)
        .sym_outer(&SymTensor::outer_power(&u0, l - am))
        .expect("dim 3");
    let tensor = product.detrace().expect("dim 3");
    let norm_sq = Rational::new(binomial(2 * l, l - am), BigInt::one() << l);
    BasisTensor::from_parts(l, m, Basis::Complex, norm_sq, tensor)
}

fn build_real(l: usize, m: i32) -> BasisTensor {
    let parent = basis_tensor(l, m.abs()).expect("valid order");
    if m == 0 {
        let mut t = parent.into_owned();
        t.basis = Basis::Real;
        return t;
    }
    let take_re = m > 0;
    let tensor = parent.tensor.map(|c| {
        let part = if take_re { c.re.clone() } else { c.im.clone() };
        Complex::new(part, Rational::zero())
    });
    let norm_sq = parent.norm_sq.clone() * Rational::from(BigInt::from(2));
    BasisTensor::from_parts(l, m, Basis::Real, norm_sq, tensor)
}

const CACHED_DEGREES: usize = 12;
const CACHE_SLOTS: usize = CACHED_DEGREES * CACHED_DEGREES;

static COMPLEX_CACHE: [OnceBox<BasisTensor>; CACHE_SLOTS] = [const { OnceBox::new() }; CACHE_SLOTS];
static REAL_CACHE: [OnceBox<BasisTensor>; CACHE_SLOTS] = [const { OnceBox::new() }; CACHE_SLOTS];

fn cached(
    cache: &'static [OnceBox<BasisTensor>; CACHE_SLOTS],
    l: usize,
    m: i32,
    build: fn(usize, i32) -> BasisTensor,
) -> Result<Cow<'static, BasisTensor>> {
    if m.unsigned_abs() as usize > l {
        return Err(Error::InvalidOrder { l, m });
    }
    if l >= CACHED_DEGREES {
        return Ok(Cow::Owned(build(l, m)));
    }
    let slot = l * l + (m + l as i32) as usize;
    Ok(Cow::Borrowed(
        cache[slot].get_or_init(|| Box::new(build(l, m))),
    ))
}

/// `𝒴^(l,m)`; results for `l < 12` are built once and shared.
pub fn basis_tensor(l: usize, m: i32) -> Result<Cow<'static, BasisTensor>> {
    cached(&COMPLEX_CACHE, l, m, build_complex)
}

/// Member of the real basis, see [`Basis::Real`].
pub fn real_basis_tensor(l: usize, m: i32) -> Result<Cow<'static, BasisTensor>> {
    cached(&REAL_CACHE, l, m, build_real)
}

pub fn basis_tensor_in(basis: Basis, l: usize, m: i32) -> Result<Cow<'static, BasisTensor>> {
    match basis {
        Basis::Complex => basis_tensor(l, m),
        Basis::Real => real_basis_tensor(l, m),
    }
}

/// `Σ_m conj(𝒴^(l,m)) ⊗ 𝒴^(l,m)`, exact; equal to the trace-free projector.
pub fn completeness_tensor(l: usize, basis: Basis) -> PairedTensor<Complex<Rational>> {
    let members: Vec<_> = (-(l as i32)..=l as i32)
        .map(|m| basis_tensor_in(basis, l, m).expect("valid order"))
        .collect();
    let rows = crate::multiset::compositions(l, 3)
        .iter()
        .map(|left| {
            SymTensor::from_fn(l, 3, |right| {
                members.iter().fold(Gaussian::zero(), |acc, y| {
                    let w = Complex::new(y.norm_sq.clone(), Rational::zero());
                    acc + w * Scalar::conj(y.tensor.get(left)) * y.tensor.get(right).clone()
                })
            })
        })
        .collect();
    PairedTensor::from_rows(l, 3, rows).expect("row count matches layout")
}

/// `sqrt(4π/(2l+1) · C(2l,l)/2^l)`.
pub fn conversion_factor(l: usize) -> f64 {
    libm::sqrt(4.0 * PI / (2 * l + 1) as f64 * legendre_leading(l).to_f64())
}

/// Spherical-harmonic coefficients `f_lm` in a given basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SphCoeffs {
    basis: Basis,
    coeffs: BTreeMap<(usize, i32), Complex64>,
}

impl SphCoeffs {
    pub fn new(basis: Basis) -> Self {
        SphCoeffs {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn insert(&mut self, l: usize, m: i32, value: Complex64) -> Result<()> {
        if m.unsigned_abs() as usize > l {
            return Err(Error::InvalidOrder { l, m });
        }
        self.coeffs.insert((l, m), value);
        Ok(())
    }

    /// Missing entries read as zero.
    pub fn get(&self, l: usize, m: i32) -> Complex64 {
        self.coeffs.get(&(l, m)).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, i32), Complex64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_basis(&self, other: &SphCoeffs) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(self.basis.name(), other.basis.name()));
        }
        Ok(())
    }

    /// `Σ conj(f_lm) g_lm`, which equals `∫ conj(f) g dΩ`.
    pub fn inner(&self, other: &SphCoeffs) -> Result<Complex64> {
        self.check_basis(other)?;
        Ok(self
            .coeffs
            .iter()
            .map(|(k, a)| a.conj() * other.get(k.0, k.1))
            .sum())
    }

    pub fn max_abs_diff(&self, other: &SphCoeffs) -> Result<f64> {
        self.check_basis(other)?;
        Ok(self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|&(l, m)| (self.get(l, m) - other.get(l, m)).norm())
            .fold(0.0, f64::max))
    }
}

/// `f_lm = K_l · 𝒴^(l,m) · f^(l)` for every `l` present and all `|m| <= l`.
pub fn stf_to_sph(e: &MultipoleExpansion<f64>, basis: Basis) -> SphCoeffs {
    let mut out = SphCoeffs::new(basis);
    for (l, f) in e.iter() {
        let fc = f.map(|x| Complex64::new(*x, 0.0));
        let k = conversion_factor(l);
        for m in -(l as i32)..=l as i32 {
            let y = basis_tensor_in(basis, l, m).expect("valid order");
            let value = y.numeric.contract_full(&fc).expect("same rank") * k;
            out.insert(l, m, value).expect("valid order");
        }
    }
    out
}

/// `f^(l) = Σ_m f_lm / K_l · conj(𝒴^(l,m))`, one tensor per degree present.
pub fn sph_to_stf(c: &SphCoeffs) -> MultipoleExpansion<Complex64> {
    let mut out = MultipoleExpansion::new();
    let mut degrees: Vec<usize> = c.coeffs.keys().map(|k| k.0).collect();
    degrees.dedup();
    for l in degrees {
        let k = conversion_factor(l);
        let mut acc = StfTensor::zeros(l);
        for m in -(l as i32)..=l as i32 {
            let v = c.get(l, m);
            if v == Complex64::zero() {
                continue;
            }
            let y = basis_tensor_in(c.basis, l, m).expect("valid order");
            let term = y.numeric.map(|z| z.conj() * (v / k));
            acc = acc.add(&term).expect("same rank");
        }
        out.insert(l, acc).expect("rank l");
    }
    out
}

/// [`sph_to_stf`] for coefficients of a real function; fails when an
/// imaginary part exceeds `tol`.
pub fn sph_to_stf_real(c: &SphCoeffs, tol: f64) -> Result<MultipoleExpansion<f64>> {
    let complex = sph_to_stf(c);
    let worst = complex
        .iter()
        .flat_map(|(_, t)| t.components().iter().map(|z| libm::fabs(z.im)))
        .fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(Error::NotReal(worst));
    }
    Ok(complex.map(|z| z.re))
}

/// Harmonic of degree `l`, order `m` in `basis`:
/// `P^(l)(n) · conj(𝒴^(l,m)) / K_l`.
pub fn harmonic_eval(basis: Basis, l: usize, m: i32, n: &UnitVec) -> Result<Complex64> {
    let y = basis_tensor_in(basis, l, m)?;
    let p = maxwell_eval(l, n).map(|x| Complex64::new(*x, 0.0));
    Ok(y.numeric.contract_conj(&p)? / conversion_factor(l))
}

/// `Y_lm(θ, φ)` through the multipole route.
pub fn ylm_eval(l: usize, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    harmonic_eval(Basis::Complex, l, m, &UnitVec::from_angles(theta, phi))
}

/// Real harmonic for [`Basis::Real`].
pub fn real_ylm_eval(l: usize, m: i32, theta: f64, phi: f64) -> Result<f64> {
    Ok(harmonic_eval(Basis::Real, l, m, &UnitVec::from_angles(theta, phi))?.re)
}

/// `P^(l)(n) · u^(m1) ... u^(ml)`.
pub fn u_contraction(ms: &[i32], n: &UnitVec) -> Result<Complex64> {
    let l = ms.len();
    let mut product = SymTensor::scalar(Complex64::new(1.0, 0.0));
    for &m in ms {
        let u = u_vector(m)?.map(|c| to_complex64(&c));
        product = product.sym_outer(&SymTensor::outer_power(&u, 1))?;
    }
    let p = maxwell_eval(l, n).map(|x| Complex64::new(*x, 0.0));
    p.contract_full(&product)
}

/// `(-1)^m sqrt(4π/(2l+1)) · sqrt((l-m)! (l+m)!)/l! · Y_{l,-m}(n)` with
/// `m = m1 + ... + ml`, the closed form of [`u_contraction`].
pub fn u_contraction_expected(ms: &[i32], n: &UnitVec) -> Result<Complex64> {
    if let Some(&bad) = ms.iter().find(|m| !(-1..=1).contains(*m)) {
        return Err(Error::InvalidULabel(bad));
    }
    let l = ms.len();
    let m: i32 = ms.iter().sum();
    let am = m.unsigned_abs() as usize;
    let ratio = Rational::new(
        factorial(l - am) * factorial(l + am),
        factorial(l) * factorial(l),
    );
    let scale = libm::sqrt(4.0 * PI / (2 * l + 1) as f64 * ratio.to_f64());
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(harmonic_eval(Basis::Complex, l, -m, n)? * (sign * scale))
}
