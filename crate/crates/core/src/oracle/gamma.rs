//! Closed-form `phi` and `theta` integrals behind the unit-vector integral,
//! and their multinomial assembly.
//!
//! With `2m`, `2(n - m)` and `2(M - n)` copies of `x`, `y`, `z`:
//!
//! ```text
//! ∫_0^{2π} cos^{2m} sin^{2n-2m} dφ = 4π / 2^{2n-1} · Γ(2n-2m) Γ(2m) / (Γ(n-m) Γ(m) Γ(n+1))
//! ∫_0^{π} sin^{2n+1} cos^{2M-2n} dθ = 2^{2n+2} Γ(n+1) Γ(M+1) Γ(2M-2n) / (Γ(2M+2) Γ(M-n))
//! ```
//!
//! `Γ(2x)/Γ(x)` is read as its limit `1/2` at `x = 0`.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{factorial, Exact, Rational};
use crate::multiset;
use crate::sym_tensor::SymTensor;
use crate::{Error, Result};

/// `Γ(2x) / Γ(x)`.
fn gamma_double_ratio(x: usize) -> Rational {
    if x == 0 {
        Rational::new(BigInt::one(), BigInt::from(2))
    } else {
        Rational::new(factorial(2 * x - 1), factorial(x - 1))
    }
}

/// `(φ integral, θ integral)` for indices `0 <= m <= n <= M`. The first is a
/// rational multiple of pi, the second rational.
pub fn gamma_integrals(m: usize, n: usize, big_m: usize) -> Result<(Exact, Exact)> {
    if m > n || n > big_m {
        return Err(Error::GammaIndexRange { m, n, big_m });
    }
    let phi = Rational::new(BigInt::from(4), BigInt::one())
        * gamma_double_ratio(n - m)
        * gamma_double_ratio(m)
        / (Rational::new(BigInt::one() << (2 * n), BigInt::from(2)) * Rational::from(factorial(n)));
    let theta = Rational::from(BigInt::one() << (2 * n + 2))
        * Rational::from(factorial(n) * factorial(big_m))
        * gamma_double_ratio(big_m - n)
        / Rational::from(factorial(2 * big_m + 1));
    Ok((Exact::pi_multiple(phi), Exact::rational(theta)))
}

/// `∫ n_{i1} ... n_{il} dΩ` as a symmetric tensor, assembled as the
/// multinomial sum over `(m, n)` of symmetrized `δ^x ... δ^y ... δ^z`
/// products times the two Gamma-function integrals.
pub fn unit_vector_integral_tensor(l: usize) -> SymTensor<Exact> {
    let mut out = SymTensor::zeros(l, 3);
    if l % 2 == 1 {
        return out;
    }
    let big_m = l / 2;
    for n in 0..=big_m {
        for m in 0..=n {
            let exps = [2 * m as u32, 2 * (n - m) as u32, 2 * (big_m - n) as u32];
            let count = multiset::multiplicity(&exps);
            // symmetrized indicator: 1/count at this multiset
            let mut indicator = SymTensor::<Exact>::zeros(l, 3);
            indicator.set(
                &exps,
                Exact::rational(Rational::new(BigInt::one(), BigInt::from(count))),
            );
            let (phi, theta) = gamma_integrals(m, n, big_m).expect("ordered indices");
            let weight = Exact::rational(Rational::from(BigInt::from(count))) * phi * theta;
            out = out.add(&indicator.scale(&weight)).expect("same shape");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn elementary_cases() {
        let (phi, theta) = gamma_integrals(0, 0, 0).unwrap();
        assert_eq!(phi, Exact::pi_multiple(rational(2, 1)));
        assert_eq!(theta, Exact::rational(rational(2, 1)));
        // ∫ sin^3 = 4/3
        let (_, theta) = gamma_integrals(0, 1, 1).unwrap();
        assert_eq!(theta, Exact::rational(rational(4, 3)));
        // ∫ cos^2 φ dφ = π
        let (phi, _) = gamma_integrals(1, 1, 1).unwrap();
        assert_eq!(phi, Exact::pi_multiple(rational(1, 1)));
        assert!(gamma_integrals(2, 1, 3).is_err());
        assert!(gamma_integrals(0, 4, 3).is_err());
    }

    #[test]
    fn assembly_at_rank_four() {
        let t = unit_vector_integral_tensor(4);
        assert_eq!(t.get(&[4, 0, 0]), &Exact::pi_multiple(rational(4, 5)));
        assert_eq!(t.get(&[2, 2, 0]), &Exact::pi_multiple(rational(4, 15)));
        assert_eq!(t.get(&[2, 1, 1]), &Exact::pi_multiple(rational(0, 1)));
    }
}
