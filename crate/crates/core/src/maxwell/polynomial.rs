use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{Rational, RealScalar, Scalar};
use crate::multiset;
use crate::sym_tensor::{delta_product, monomial, SymTensor};
use crate::{Error, Result};

use super::UnitVec;

/// `f(n) = Σ_k A^(k)_{i1...} n_{i1} ... n_{i_lk}`, one symmetric coefficient
/// tensor per term.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularPolynomial<S = Rational> {
    terms: Vec<SymTensor<S>>,
}

impl<S: Scalar> Default for AngularPolynomial<S> {
    fn default() -> Self {
        AngularPolynomial { terms: Vec::new() }
    }
}

impl<S: Scalar> AngularPolynomial<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: S) -> Self {
        AngularPolynomial {
            terms: vec![SymTensor::scalar(c)],
        }
    }

    /// `n_x^a n_y^b n_z^c`.
    pub fn monomial(exps: [u32; 3]) -> Self {
        let rank = exps.iter().sum::<u32>() as usize;
        let mut t = SymTensor::zeros(rank, 3);
        t.set(&exps, S::from_ratio(1, multiset::multiplicity(&exps)));
        AngularPolynomial { terms: vec![t] }
    }

    pub fn from_terms(terms: Vec<SymTensor<S>>) -> Result<Self> {
        let mut p = Self::new();
        for t in terms {
            p.push(t)?;
        }
        Ok(p)
    }

    pub fn push(&mut self, term: SymTensor<S>) -> Result<()> {
        if term.dim() != 3 {
            return Err(Error::DimMismatch(3, term.dim()));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn terms(&self) -> &[SymTensor<S>] {
        &self.terms
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.terms.iter().map(SymTensor::rank).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        AngularPolynomial { terms }
    }

    pub fn scale(&self, s: &S) -> Self {
        AngularPolynomial {
            terms: self.terms.iter().map(|t| t.scale(s)).collect(),
        }
    }

    /// Pointwise product; ranks add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.sym_outer(b).expect("both three-dimensional"));
            }
        }
        AngularPolynomial { terms }
    }

    /// Value at an arbitrary point `v` (not necessarily unit).
    pub fn eval_at(&self, v: &[S; 3]) -> S {
        let mut acc = S::zero();
        for t in &self.terms {
            for (e, a) in t.iter() {
                if a.is_zero() {
                    continue;
                }
                let m = S::from_ratio(multiset::multiplicity(&e) as i128, 1);
                acc = acc + m * a.clone() * monomial(v, &e);
            }
        }
        acc
    }

    /// Each term lifted by `δ`-products to the highest rank of its parity, so
    /// the polynomial is `even·n^{⊗D_e} + odd·n^{⊗D_o}` on the sphere.
    pub fn homogenized(&self) -> (Option<SymTensor<S>>, Option<SymTensor<S>>) {
        let top = |parity: usize| {
            self.terms
                .iter()
                .map(SymTensor::rank)
                .filter(|r| r % 2 == parity)
                .max()
        };
        let lift = |parity: usize| {
            let d = top(parity)?;
            let mut acc = SymTensor::zeros(d, 3);
            for t in self.terms.iter().filter(|t| t.rank() % 2 == parity) {
                let deltas = delta_product::<S>(d - t.rank(), 3).expect("even gap");
                acc = acc
                    .add(&t.sym_outer(&deltas).expect("dim 3"))
                    .expect("rank d");
            }
            Some(acc)
        };
        (lift(0), lift(1))
    }

    /// Exact test for `f(n) = 0` at every unit `n`.
    pub fn is_zero_on_sphere(&self) -> bool {
        let (even, odd) = self.homogenized();
        even.is_none_or(|t| t.is_zero()) && odd.is_none_or(|t| t.is_zero())
    }

    pub fn equals_on_sphere(&self, other: &Self) -> bool {
        self.add(&other.scale(&-S::one())).is_zero_on_sphere()
    }
}

impl<S: RealScalar> AngularPolynomial<S> {
    pub fn eval(&self, n: &UnitVec) -> f64 {
        let v = n.as_array();
        let mut acc = 0.0;
        for t in &self.terms {
            for (e, a) in t.iter() {
                if a.is_zero() {
                    continue;
                }
                acc += multiset::multiplicity(&e) as f64 * a.to_f64() * monomial(&v, &e);
            }
        }
        acc
    }
}
