//! Gauss–Legendre rules and the product rule on the sphere.
//!
//! Sums are accumulated in a fixed order with Neumaier compensation, so
//! results are bit-for-bit reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::maxwell::UnitVec;
use crate::{Error, Result};

/// Values a quadrature rule can accumulate.
pub trait QuadValue:
    Copy + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn abs(&self) -> f64;
    fn from_real(x: f64) -> Self;
    fn parts(&self) -> (f64, f64);
    fn from_parts(re: f64, im: f64) -> Self;
}

impl QuadValue for f64 {
    fn abs(&self) -> f64 {
        libm::fabs(*self)
    }

    fn from_real(x: f64) -> Self {
        x
    }

    fn parts(&self) -> (f64, f64) {
        (*self, 0.0)
    }

    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }
}

impl QuadValue for Complex64 {
    fn abs(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn parts(&self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for real or complex values.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: Neumaier,
    im: Neumaier,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<T: QuadValue>(&mut self, x: T) {
        let (re, im) = x.parts();
        self.re.add(re);
        self.im.add(im);
    }

    pub fn value<T: QuadValue>(&self) -> T {
        T::from_parts(self.re.value(), self.im.value())
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n`-point Gauss–Legendre approximation of `∫_a^b f`.
pub fn integrate_interval<T: QuadValue>(f: impl Fn(f64) -> T, a: f64, b: f64, n: usize) -> T {
    let (nodes, weights) = gauss_legendre(n);
    integrate_with_rule(&f, a, b, &nodes, &weights)
}

pub(crate) fn integrate_with_rule<T: QuadValue>(
    f: &impl Fn(f64) -> T,
    a: f64,
    b: f64,
    nodes: &[f64],
    weights: &[f64],
) -> T {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::new();
    for (x, w) in nodes.iter().zip(weights) {
        acc.add(f(mid + half * x) * (w * half));
    }
    acc.value()
}

/// Gauss–Legendre in `cos(theta)` times the uniform rule in `phi`.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    cos_theta: Vec<f64>,
    weights: Vec<f64>,
    n_phi: usize,
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        let (cos_theta, weights) = gauss_legendre(n_theta.max(1));
        SphereQuadrature {
            cos_theta,
            weights,
            n_phi: n_phi.max(1),
        }
    }

    /// Smallest rule that is exact for polynomials in `n` of total degree
    /// `degree`.
    pub fn for_degree(degree: usize) -> Self {
        SphereQuadrature::new(degree / 2 + 1, degree + 1)
    }

    pub fn n_theta(&self) -> usize {
        self.cos_theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Highest total polynomial degree integrated exactly,
    /// `min(2 N_theta - 1, N_phi - 1)`.
    pub fn exact_degree(&self) -> usize {
        (2 * self.n_theta() - 1).min(self.n_phi - 1)
    }

    /// Nodes with their weights; the weights sum to `4 pi`.
    pub fn nodes(&self) -> impl Iterator<Item = (UnitVec, f64)> + '_ {
        let dphi = 2.0 * PI / self.n_phi as f64;
        self.cos_theta
            .iter()
            .zip(&self.weights)
            .flat_map(move |(&ct, &wt)| {
                let st = libm::sqrt((1.0 - ct * ct).max(0.0));
                (0..self.n_phi).map(move |j| {
                    let phi = j as f64 * dphi;
                    let n = UnitVec::from_raw([st * libm::cos(phi), st * libm::sin(phi), ct]);
                    (n, wt * dphi)
                })
            })
    }

    pub fn integrate<T: QuadValue>(&self, f: impl Fn(&UnitVec) -> T) -> T {
        let mut acc = CompensatedSum::new();
        for (n, w) in self.nodes() {
            acc.add(f(&n) * w);
        }
        acc.value()
    }
}

/// Integrates `f` over the unit sphere with the rule exact at degree
/// `degree_hint`, and checks it against the rule with doubled node counts.
/// The refined value is returned; a change larger than
/// `tol * max(1, |value|)` is reported as non-convergence.
pub fn integrate_sphere<T: QuadValue>(
    f: impl Fn(&UnitVec) -> T,
    degree_hint: usize,
    tol: f64,
) -> Result<T> {
    let coarse = SphereQuadrature::for_degree(degree_hint);
    let fine = SphereQuadrature::new(2 * coarse.n_theta(), 2 * coarse.n_phi());
    let a = coarse.integrate(&f);
    let b = fine.integrate(&f);
    let change = (b - a).abs();
    if change > tol * b.abs().max(1.0) {
        return Err(Error::NonConvergence {
            estimate: b.abs(),
            change,
        });
    }
    Ok(b)
}

/// `∫_{-1}^{1} P_l(x) f(x) dx` by Gauss–Legendre, doubling the node count
/// from `l + 16` until two successive estimates agree within
/// `tol * max(1, |value|)`.
pub fn legendre_projection<T: QuadValue>(l: usize, f: impl Fn(f64) -> T, tol: f64) -> Result<T> {
    let g = |x: f64| f(x) * crate::legendre::legendre_value(l, x);
    let mut n = l + 16;
    let mut prev = integrate_interval(g, -1.0, 1.0, n);
    let mut change = f64::INFINITY;
    while n <= 4096 {
        n *= 2;
        let next = integrate_interval(g, -1.0, 1.0, n);
        change = (next - prev).abs();
        if change <= tol * next.abs().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        estimate: prev.abs(),
        change,
    })
}
