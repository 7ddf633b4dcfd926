use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{legendre_leading, Exact, Rational, RealScalar, Scalar};
use crate::multiset;
use crate::sym_tensor::{StfTensor, SymTensor};
use crate::{Error, Result};

use super::{angular_integral_monomial, maxwell_eval, AngularPolynomial, UnitVec};

/// `f(n) = Σ_l f^(l) · P^(l)(n)` with trace-free coefficient tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultipoleExpansion<S = Rational> {
    coeffs: BTreeMap<usize, StfTensor<S>>,
}

impl<S: Scalar> Default for MultipoleExpansion<S> {
    fn default() -> Self {
        MultipoleExpansion {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> MultipoleExpansion<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces any coefficient already stored at `l`.
    pub fn insert(&mut self, l: usize, t: StfTensor<S>) -> Result<()> {
        if t.rank() != l {
            return Err(Error::RankMismatch {
                expected: l,
                found: t.rank(),
            });
        }
        self.coeffs.insert(l, t);
        Ok(())
    }

    pub fn get(&self, l: usize) -> Option<&StfTensor<S>> {
        self.coeffs.get(&l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &StfTensor<S>)> {
        self.coeffs.iter().map(|(l, t)| (*l, t))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_l(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Drops degrees whose coefficient is identically zero.
    pub fn without_zeros(&self) -> Self {
        MultipoleExpansion {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, t)| !t.as_sym().is_zero())
                .map(|(l, t)| (*l, t.clone()))
                .collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultipoleExpansion<T> {
        MultipoleExpansion {
            coeffs: self.coeffs.iter().map(|(l, t)| (*l, t.map(&f))).collect(),
        }
    }

    /// `Σ_l C(2l,l)/2^l · f^(l) · n^{⊗l}`, equal to `f` on the sphere.
    pub fn to_polynomial(&self) -> AngularPolynomial<S> {
        let mut p = AngularPolynomial::new();
        for (l, t) in &self.coeffs {
            let lead = S::from_rational(&legendre_leading(*l));
            p.push(t.scale(&lead).into_sym()).expect("dim 3");
        }
        p
    }

    /// Largest componentwise difference; a degree missing on one side counts
    /// as zero there.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in self.coeffs.keys().chain(other.coeffs.keys()) {
            let d = match (self.coeffs.get(l), other.coeffs.get(l)) {
                (Some(a), Some(b)) => a.max_abs_diff(b).expect("same rank"),
                (Some(a), None) | (None, Some(a)) => a.max_abs(),
                (None, None) => 0.0,
            };
            worst = worst.max(d);
        }
        worst
    }
}

impl<S: RealScalar> MultipoleExpansion<S> {
    /// `Σ_l f^(l) · P^(l)(n)`.
    pub fn reconstruct(&self, n: &UnitVec) -> f64 {
        reconstruct(&self.map(RealScalar::to_f64), n)
    }

    /// `Σ_l 4π/(2l+1) · C(2l,l)/2^l · f^(l) · g^(l)`, which equals `∫ f g dΩ`.
    pub fn parseval(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for (l, a) in &self.coeffs {
            let Some(b) = other.coeffs.get(l) else {
                continue;
            };
            let dot = a.contract_full(b).expect("same rank").to_f64();
            let weight =
                4.0 * core::f64::consts::PI / (2 * l + 1) as f64 * legendre_leading(*l).to_f64();
            acc += weight * dot;
        }
        acc
    }
}

impl MultipoleExpansion<Rational> {
    /// Exact form of [`MultipoleExpansion::parseval`].
    pub fn parseval_exact(&self, other: &Self) -> Exact {
        let mut acc = Rational::zero();
        for (l, a) in &self.coeffs {
            if let Some(b) = other.coeffs.get(l) {
                let w =
                    Rational::new(BigInt::from(4), BigInt::from(2 * l + 1)) * legendre_leading(*l);
                acc += w * a.contract_full(b).expect("same rank");
            }
        }
        Exact::pi_multiple(acc)
    }
}

/// `Σ_l f^(l) · P^(l)(n)` for float coefficients.
pub fn reconstruct(e: &MultipoleExpansion<f64>, n: &UnitVec) -> f64 {
    e.iter()
        .map(|(l, t)| t.contract_full(&maxwell_eval(l, n)).expect("same rank"))
        .sum()
}

/// Exact coefficients `f^(l) = (2l+1)/(4π) · {∫ n_{i1} ... n_{il} f dΩ}`.
/// Each term of rank `p` contributes at `l = p, p-2, ...`; those keys are
/// always present, even when the coefficient vanishes.
pub fn expand(f: &AngularPolynomial) -> MultipoleExpansion {
    let mut out = MultipoleExpansion::new();
    let mut degrees: alloc::vec::Vec<usize> = f
        .terms()
        .iter()
        .flat_map(|t| (0..=t.rank()).rev().step_by(2))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    for l in degrees {
        let moment = SymTensor::from_fn(l, 3, |outer| {
            let mut acc = Rational::zero();
            for t in f.terms().iter().filter(|t| t.rank() % 2 == l % 2) {
                for (e, a) in t.iter() {
                    if a.is_zero() {
                        continue;
                    }
                    let m = Rational::from(BigInt::from(multiset::multiplicity(&e)));
                    let integral = angular_integral_monomial(&multiset::add(outer, &e));
                    acc += m * a * integral.coeff();
                }
            }
            acc
        });
        // the pi of the moment cancels against 1/(4π)
        let scale = Rational::new(BigInt::from(2 * l + 1), BigInt::from(4));
        let coeff = moment.detrace().expect("dim 3").scale(&scale);
        out.insert(l, coeff).expect("rank l");
    }
    out
}

/// [`expand`] keeping only degrees up to `lmax`; the flag reports whether
/// anything nonzero was dropped.
pub fn expand_truncated(f: &AngularPolynomial, lmax: usize) -> (MultipoleExpansion, bool) {
    let full = expand(f);
    let mut kept = MultipoleExpansion::new();
    let mut dropped = false;
    for (l, t) in full.iter() {
        if l <= lmax {
            kept.insert(l, t.clone()).expect("rank l");
        } else if !t.is_zero() {
            dropped = true;
        }
    }
    (kept, dropped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn constant_and_quadratic() {
        let e = expand(&AngularPolynomial::constant(rational(1, 1)));
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(0).unwrap().components(), &[rational(1, 1)]);

        let e = expand(&AngularPolynomial::monomial([2, 0, 0]));
        assert_eq!(e.get(0).unwrap().components(), &[rational(1, 3)]);
        let f2 = e.get(2).unwrap();
        assert_eq!(f2.get(&[2, 0, 0]), &rational(4, 9));
        assert_eq!(f2.get(&[0, 2, 0]), &rational(-2, 9));
        assert_eq!(f2.get(&[0, 0, 2]), &rational(-2, 9));
        let n = UnitVec::new(0.0, 0.0, 1.0).unwrap();
        let z2 = expand(&AngularPolynomial::monomial([0, 0, 2]));
        assert!((z2.reconstruct(&n) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn insert_checks_rank() {
        let mut e = MultipoleExpansion::<Rational>::new();
        assert!(e.insert(1, StfTensor::zeros(2)).is_err());
    }
}
