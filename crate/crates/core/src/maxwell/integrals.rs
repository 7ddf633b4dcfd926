use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{legendre_leading, Exact, Rational};
use crate::multiset;
use crate::sym_tensor::{stf_projector, PairedTensor};

use super::AngularPolynomial;

/// `∫ n_x^a n_y^b n_z^c dΩ = 4π/(l+1) · δ_{(i1 i2} ... δ_{i_{l-1} i_l)}`
/// at the multiset `(a, b, c)`, `l = a + b + c`.
pub fn angular_integral_monomial(exps: &[u32]) -> Exact {
    let l: u32 = exps.iter().sum();
    match multiset::pairing_count(exps) {
        Some(pairings) => Exact::pi_multiple(Rational::new(
            BigInt::from(4u32) * BigInt::from(pairings),
            BigInt::from(l + 1) * BigInt::from(multiset::total_pairings(l as usize)),
        )),
        None => Exact::zero(),
    }
}

/// `∫ f dΩ`, exact.
pub fn integrate(f: &AngularPolynomial) -> Exact {
    let mut acc = Rational::zero();
    for t in f.terms() {
        for (e, a) in t.iter() {
            if a.is_zero() {
                continue;
            }
            let m = Rational::from(BigInt::from(multiset::multiplicity(&e)));
            acc += m * a * angular_integral_monomial(&e).coeff();
        }
    }
    Exact::pi_multiple(acc)
}

/// `∫ f g dΩ`, exact.
pub fn integrate_product(f: &AngularPolynomial, g: &AngularPolynomial) -> Exact {
    integrate(&f.mul(g))
}

/// `∫ P^(l)_{i1...il}(n) P^(l')_{j1...jl'}(n) dΩ`: zero unless `l = l'`,
/// otherwise `4π/(2l+1) · C(2l,l)/2^l · δ_{i1}^{{j1} ... δ_{il}^{jl}}`.
pub fn orthogonality_tensor(l: usize, l2: usize) -> PairedTensor<Exact> {
    if l != l2 {
        return PairedTensor::zeros(l, l2, 3);
    }
    let scale = Rational::new(BigInt::from(4), BigInt::from(2 * l + 1)) * legendre_leading(l);
    stf_projector(l).map(|c| Exact::pi_multiple(c * &scale))
}
