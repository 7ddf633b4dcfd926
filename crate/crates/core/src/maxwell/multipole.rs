use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{binomial, legendre_leading, Rational};
use crate::multiset::{self, Exponents};
use crate::sym_tensor::{delta_product, StfTensor, SymTensor};

use super::{AngularPolynomial, UnitVec};

/// `P^(l)(n)` with polynomial components, indexed like a rank-`l`
/// symmetric tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxwellTensor {
    l: usize,
    comps: Vec<AngularPolynomial>,
}

impl MaxwellTensor {
    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn component(&self, exps: &[u32]) -> &AngularPolynomial {
        &self.comps[multiset::position(exps)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Exponents, &AngularPolynomial)> {
        multiset::compositions(self.l, 3)
            .into_iter()
            .zip(&self.comps)
    }

    pub fn eval(&self, n: &UnitVec) -> StfTensor<f64> {
        let t =
            SymTensor::from_components(self.l, 3, self.comps.iter().map(|p| p.eval(n)).collect())
                .expect("component count matches layout");
        StfTensor::new_unchecked(t)
    }

    /// `P^(l)_{jj i3 ... il}` as polynomials, empty for `l < 2`.
    pub fn trace(&self) -> Vec<AngularPolynomial> {
        if self.l < 2 {
            return Vec::new();
        }
        multiset::compositions(self.l - 2, 3)
            .iter()
            .map(|e| {
                (0..3).fold(AngularPolynomial::new(), |acc, a| {
                    let mut probe = e.clone();
                    probe[a] += 2;
                    acc.add(self.component(&probe))
                })
            })
            .collect()
    }

    /// Every trace is the zero polynomial on the sphere (exact).
    pub fn is_traceless(&self) -> bool {
        self.trace()
            .iter()
            .all(AngularPolynomial::is_zero_on_sphere)
    }
}

/// `P^(l) = C(2l,l)/2^l · {n_{i1} ... n_{il}}` with exact polynomial
/// components.
pub fn maxwell_tensor(l: usize) -> MaxwellTensor {
    let lead = legendre_leading(l);
    let norm = binomial(2 * l, l);
    let deltas: Vec<SymTensor<Rational>> = (0..=l / 2)
        .map(|k| delta_product(2 * k, 3).expect("even rank"))
        .collect();
    let comps = multiset::compositions(l, 3)
        .iter()
        .map(|outer| {
            let m_outer = multiset::multiplicity(outer);
            let mut poly = AngularPolynomial::new();
            for (k, delta) in deltas.iter().enumerate() {
                let sign = if k % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let a_k = Rational::new(
                    sign * binomial(l, k) * binomial(2 * l - 2 * k, l),
                    norm.clone(),
                );
                let coeff = &lead * a_k;
                let term = SymTensor::from_fn(l - 2 * k, 3, |inner| {
                    match multiset::checked_sub(outer, inner) {
                        Some(rest) => {
                            let d = delta.get(&rest);
                            let w = Rational::new(
                                BigInt::from(multiset::multiplicity(&rest)),
                                BigInt::from(m_outer),
                            );
                            &coeff * w * d
                        }
                        None => Rational::from(BigInt::from(0)),
                    }
                });
                poly.push(term).expect("dim 3");
            }
            poly
        })
        .collect();
    MaxwellTensor { l, comps }
}

/// `P^(l)(n)` in floating point.
pub fn maxwell_eval(l: usize, n: &UnitVec) -> StfTensor<f64> {
    let lead = crate::exact::RealScalar::to_f64(&legendre_leading(l));
    SymTensor::outer_power(&n.as_array(), l)
        .detrace()
        .expect("dim 3")
        .scale(&lead)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_ranks_at_pole() {
        let z = UnitVec::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(maxwell_eval(0, &z).components(), &[1.0]);
        assert_eq!(maxwell_eval(1, &z).components(), &[0.0, 0.0, 1.0]);
        let p2 = maxwell_eval(2, &z);
        assert_eq!(p2.get(&[2, 0, 0]), &-0.5);
        assert_eq!(p2.get(&[0, 2, 0]), &-0.5);
        assert_eq!(p2.get(&[0, 0, 2]), &1.0);
        assert_eq!(p2.get(&[1, 0, 1]), &0.0);
    }

    #[test]
    fn polynomial_form_matches_float_form() {
        let n = UnitVec::from_angles(0.8, 2.1);
        for l in 0..=5 {
            let exact = maxwell_tensor(l);
            assert!(exact.is_traceless());
            let diff = exact.eval(&n).max_abs_diff(&maxwell_eval(l, &n)).unwrap();
            assert!(diff < 1e-13, "l={l}");
        }
    }
}
