//! Legendre polynomials with exact rational coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{legendre_leading, Rational, RealScalar};

/// `P_l(x) = sum_k coeffs[k] x^k`, normalized so that `P_l(1) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendrePoly {
    coeffs: Vec<Rational>,
}

impl LegendrePoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval_exact(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

/// `P_l`, built from `(l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1}`.
pub fn legendre(l: usize) -> LegendrePoly {
    let mut prev = vec![Rational::one()];
    if l == 0 {
        return LegendrePoly { coeffs: prev };
    }
    let mut cur = vec![Rational::zero(), Rational::one()];
    for k in 1..l {
        let mut next = vec![Rational::zero(); k + 2];
        let a = Rational::new(BigInt::from(2 * k + 1), BigInt::from(k + 1));
        let b = Rational::new(BigInt::from(k), BigInt::from(k + 1));
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += &a * c;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= &b * c;
        }
        prev = cur;
        cur = next;
    }
    LegendrePoly { coeffs: cur }
}

/// Float evaluation by the three-term recurrence.
pub fn legendre_value(l: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if l == 0 {
        return p0;
    }
    for k in 1..l {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `∫_{-1}^{1} x^k dx`: `2/(k+1)` for even `k`, zero otherwise.
pub fn moment_integral(k: usize) -> Rational {
    if k % 2 == 1 {
        Rational::zero()
    } else {
        Rational::new(BigInt::from(2), BigInt::from(k + 1))
    }
}

/// `∫_{-1}^{1} a(x) b(x) dx`, exactly.
pub fn legendre_inner(a: &LegendrePoly, b: &LegendrePoly) -> Rational {
    let mut acc = Rational::zero();
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            if cb.is_zero() || (i + j) % 2 == 1 {
                continue;
            }
            acc += ca * cb * moment_integral(i + j);
        }
    }
    acc
}

/// `C(2l, l) / 2^l`.
pub fn leading_coefficient(l: usize) -> Rational {
    legendre_leading(l)
}
