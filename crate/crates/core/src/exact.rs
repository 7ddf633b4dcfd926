//! Scalar types shared by the tensor code.
//!
//! [`Rational`] is the default exact scalar. [`Exact`] is a rational times a
//! power of pi, which is what closed-form angular integrals produce.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// Field-like scalar usable as a tensor component.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_ratio(num: i128, den: u128) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Absolute value as a float, used for tolerance checks.
    fn magnitude(&self) -> f64;

    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Scalars with a real value.
pub trait RealScalar: Scalar {
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
}

impl RealScalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i128, den: u128) -> Self {
        num as f64 / den as f64
    }

    fn magnitude(&self) -> f64 {
        libm::fabs(*self)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(f64::from_rational(r), 0.0)
    }

    fn from_ratio(num: i128, den: u128) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// Gaussian rationals.
impl Scalar for Complex<Rational> {
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }

    fn magnitude(&self) -> f64 {
        let re = self.re.magnitude();
        let im = self.im.magnitude();
        libm::hypot(re, im)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// `coeff * pi^pi_power`, kept exact.
///
/// Zero is normalized to `pi_power == 0`, so a zero can be added to a value
/// carrying any power of pi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact {
    coeff: Rational,
    pi_power: u8,
}

impl Exact {
    pub fn new(coeff: Rational, pi_power: u8) -> Self {
        let pi_power = if coeff.is_zero() { 0 } else { pi_power };
        Exact { coeff, pi_power }
    }

    pub fn rational(coeff: Rational) -> Self {
        Exact::new(coeff, 0)
    }

    /// `coeff * pi`.
    pub fn pi_multiple(coeff: Rational) -> Self {
        Exact::new(coeff, 1)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u8 {
        self.pi_power
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = RealScalar::to_f64(&self.coeff);
        for _ in 0..self.pi_power {
            v *= core::f64::consts::PI;
        }
        v
    }

    /// Sum of two values, or `None` when both are nonzero with different
    /// powers of pi.
    pub fn checked_add(&self, other: &Exact) -> Option<Exact> {
        if self.coeff.is_zero() {
            return Some(other.clone());
        }
        if other.coeff.is_zero() {
            return Some(self.clone());
        }
        if self.pi_power != other.pi_power {
            return None;
        }
        Some(Exact::new(&self.coeff + &other.coeff, self.pi_power))
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact::rational(r)
    }
}

impl Add for Exact {
    type Output = Exact;

    fn add(self, rhs: Exact) -> Exact {
        match self.checked_add(&rhs) {
            Some(v) => v,
            None => panic!("cannot add {} and {}: different powers of pi", self, rhs),
        }
    }
}

impl Neg for Exact {
    type Output = Exact;

    fn neg(self) -> Exact {
        Exact::new(-self.coeff, self.pi_power)
    }
}

impl Sub for Exact {
    type Output = Exact;

    fn sub(self, rhs: Exact) -> Exact {
        self + (-rhs)
    }
}

impl Mul for Exact {
    type Output = Exact;

    fn mul(self, rhs: Exact) -> Exact {
        Exact::new(self.coeff * rhs.coeff, self.pi_power + rhs.pi_power)
    }
}

impl Zero for Exact {
    fn zero() -> Self {
        Exact::new(Rational::zero(), 0)
    }

    fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl One for Exact {
    fn one() -> Self {
        Exact::new(Rational::one(), 0)
    }
}

impl Scalar for Exact {
    fn from_rational(r: &Rational) -> Self {
        Exact::rational(r.clone())
    }

    fn magnitude(&self) -> f64 {
        libm::fabs(self.to_f64())
    }
}

impl RealScalar for Exact {
    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*pi", self.coeff),
            p => write!(f, "{}*pi^{}", self.coeff, p),
        }
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!` with the convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(2l, l) / 2^l`, the leading coefficient of the Legendre polynomial
/// `P_l` and the prefactor of the Maxwell multipole `P^(l)`.
pub fn legendre_leading(l: usize) -> Rational {
    Rational::new(binomial(2 * l, l), BigInt::one() << l)
}
