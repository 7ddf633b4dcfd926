mod common;

use std::f64::consts::PI;

use common::r;
use num_complex::Complex64;
use stf_core::harmonics::ylm_eval;
use stf_core::maxwell::{angular_integral_monomial, maxwell_eval};
use stf_core::multiset::compositions;
use stf_core::oracle::{
    fd_angular_laplacian, gamma_integrals, gauss_legendre, integrate_interval, integrate_sphere,
    normalized_associated_legendre, reference_ylm, unit_vector_integral_tensor, CompensatedSum,
    SphereQuadrature,
};
use stf_core::{Exact, UnitVec};

fn monomial(n: &UnitVec, e: &[u32]) -> f64 {
    n.x().powi(e[0] as i32) * n.y().powi(e[1] as i32) * n.z().powi(e[2] as i32)
}

#[test]
fn sphere_quadrature_integrates_monomials() {
    for l in 0..=10 {
        for e in compositions(l, 3) {
            let q = integrate_sphere(|n| monomial(n, &e), l, 1e-12).unwrap();
            let exact = angular_integral_monomial(&e).to_f64();
            assert!((q - exact).abs() < 1e-12, "{e:?}");
        }
    }
}

#[test]
fn sphere_quadrature_examples() {
    let area: f64 = integrate_sphere(|_| 1.0, 0, 1e-13).unwrap();
    assert!((area - 4.0 * PI).abs() < 1e-13);
    let q: f64 = integrate_sphere(|n| monomial(n, &[2, 2, 0]), 4, 1e-13).unwrap();
    assert!((q - 4.0 * PI / 15.0).abs() < 1e-13);
    let q: Complex64 = integrate_sphere(
        |n| {
            ylm_eval(1, 0, n.theta(), n.phi()).unwrap()
                * ylm_eval(2, 0, n.theta(), n.phi()).unwrap()
        },
        3,
        1e-12,
    )
    .unwrap();
    assert!(q.norm() < 1e-12);
}

#[test]
fn exactness_degree_of_the_product_rule() {
    let quad = SphereQuadrature::new(4, 9);
    assert_eq!(quad.exact_degree(), 7);
    assert_eq!(quad.nodes().count(), 36);
    let weights: f64 = quad.nodes().map(|(_, w)| w).sum();
    assert!((weights - 4.0 * PI).abs() < 1e-13);
    for l in 0..=quad.exact_degree() {
        for e in compositions(l, 3) {
            let q = quad.integrate(|n| monomial(n, &e));
            assert!(
                (q - angular_integral_monomial(&e).to_f64()).abs() < 1e-13,
                "{e:?}"
            );
        }
    }
    let for_eight = SphereQuadrature::for_degree(8);
    assert!(for_eight.exact_degree() >= 8);
}

#[test]
fn doubling_detects_unresolved_integrands() {
    let rough = |n: &UnitVec| monomial(n, &[0, 0, 30]);
    assert!(integrate_sphere(rough, 2, 1e-12).is_err());
    assert!(integrate_sphere(rough, 30, 1e-12).is_ok());
}

#[test]
fn one_dimensional_rules() {
    let (x, w) = gauss_legendre(5);
    assert_eq!(x.len(), 5);
    let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
    assert!((approx - 2.0 / 9.0).abs() < 1e-14);
    let s = integrate_interval(f64::sin, 0.0, PI, 20);
    assert!((s - 2.0).abs() < 1e-14);
}

#[test]
fn compensated_sum_is_order_stable() {
    let mut acc = CompensatedSum::new();
    acc.add(1e16);
    for _ in 0..1000 {
        acc.add(1.0);
    }
    acc.add(-1e16);
    let v: f64 = acc.value();
    assert_eq!(v, 1000.0);
}

#[test]
fn gamma_integrals_match_elementary_integrals() {
    assert_eq!(
        gamma_integrals(0, 0, 0).unwrap(),
        (Exact::pi_multiple(r(2, 1)), Exact::rational(r(2, 1)))
    );
    assert_eq!(
        gamma_integrals(0, 1, 1).unwrap().1,
        Exact::rational(r(4, 3))
    );
    assert_eq!(
        gamma_integrals(1, 1, 1).unwrap().0,
        Exact::pi_multiple(r(1, 1))
    );
    for big_m in 0..=5 {
        for n in 0..=big_m {
            for m in 0..=n {
                let (phi, theta) = gamma_integrals(m, n, big_m).unwrap();
                let phi_num = integrate_interval(
                    |p: f64| p.cos().powi(2 * m as i32) * p.sin().powi(2 * (n - m) as i32),
                    0.0,
                    2.0 * PI,
                    40,
                );
                let theta_num = integrate_interval(
                    |t: f64| t.sin().powi(2 * n as i32 + 1) * t.cos().powi(2 * (big_m - n) as i32),
                    0.0,
                    PI,
                    40,
                );
                assert!((phi.to_f64() - phi_num).abs() < 1e-12, "{m} {n} {big_m}");
                assert!(
                    (theta.to_f64() - theta_num).abs() < 1e-12,
                    "{m} {n} {big_m}"
                );
            }
        }
    }
    assert!(gamma_integrals(2, 1, 3).is_err());
    assert!(gamma_integrals(0, 4, 3).is_err());
}

#[test]
fn gamma_assembly_at_rank_four() {
    let t = unit_vector_integral_tensor(4);
    assert_eq!(t.get(&[4, 0, 0]), &Exact::pi_multiple(r(4, 5)));
    assert_eq!(t.get(&[2, 2, 0]), &Exact::pi_multiple(r(4, 15)));
    assert_eq!(t.get(&[3, 1, 0]), &Exact::pi_multiple(r(0, 1)));
    assert!(unit_vector_integral_tensor(3).is_zero());
}

#[test]
fn reference_harmonics_examples() {
    let y00 = reference_ylm(0, 0, 1.2, 0.3).unwrap();
    assert!((y00 - 1.0 / (4.0 * PI).sqrt()).norm() < 1e-15);
    let y11 = reference_ylm(1, 1, PI / 2.0, 0.0).unwrap();
    assert!((y11 + (3.0 / (8.0 * PI)).sqrt()).norm() < 1e-15);
    let y1m1 = reference_ylm(1, -1, PI / 2.0, 0.0).unwrap();
    assert!((y1m1 - (3.0 / (8.0 * PI)).sqrt()).norm() < 1e-15);
    assert!(reference_ylm(3, 4, 0.1, 0.1).is_err());
    let p = normalized_associated_legendre(2, 0, 0.5);
    let expected = (5.0 / (4.0 * PI)).sqrt() * (3.0 * 0.25 - 1.0) / 2.0;
    assert!((p - expected).abs() < 1e-15);
}

#[test]
fn reference_harmonics_are_orthonormal() {
    let quad = SphereQuadrature::for_degree(16);
    let nodes: Vec<(UnitVec, f64)> = quad.nodes().collect();
    let labels: Vec<(usize, i32)> = (0..=6usize)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m)))
        .collect();
    let values: Vec<Vec<Complex64>> = labels
        .iter()
        .map(|&(l, m)| {
            nodes
                .iter()
                .map(|(n, _)| reference_ylm(l, m, n.theta(), n.phi()).unwrap())
                .collect()
        })
        .collect();
    for (i, a) in values.iter().enumerate() {
        for (j, b) in values.iter().enumerate() {
            let mut acc = CompensatedSum::new();
            for ((x, y), (_, w)) in a.iter().zip(b).zip(&nodes) {
                acc.add(x.conj() * y * *w);
            }
            let g: Complex64 = acc.value();
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!(
                (g - expected).norm() < 1e-12,
                "{:?} {:?}",
                labels[i],
                labels[j]
            );
        }
    }
}

#[test]
fn reference_harmonics_stay_normalized_at_high_degree() {
    let quad = SphereQuadrature::for_degree(40);
    for m in [0, 1, 7, 15, 20] {
        let norm: f64 =
            quad.integrate(|n| reference_ylm(20, m, n.theta(), n.phi()).unwrap().norm_sqr());
        assert!((norm - 1.0).abs() < 1e-12, "m={m}");
    }
}

#[test]
fn laplacian_of_simple_functions() {
    let theta = PI / 3.0;
    let dipole = |t: f64, _: f64| t.cos();
    let err =
        |h: f64| (fd_angular_laplacian(dipole, theta, 0.2, h).unwrap() + 2.0 * theta.cos()).abs();
    let ratio = err(0.02) / err(0.01);
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    let flat = fd_angular_laplacian(|_, _| 2.5, 1.0, 1.0, 0.01).unwrap();
    assert!(flat.abs() < 1e-9);
    assert!(fd_angular_laplacian(dipole, 0.05, 0.0, 0.01).is_err());
    assert!(fd_angular_laplacian(dipole, 1.0, 0.0, 0.0).is_err());
}

#[test]
fn laplacian_convergence_for_multipoles() {
    for l in 1..=4 {
        for e in compositions(l, 3) {
            let f = |t: f64, p: f64| *maxwell_eval(l, &UnitVec::from_angles(t, p)).get(&e);
            let (theta, phi) = (2.0, -0.6);
            let target = -((l * (l + 1)) as f64) * f(theta, phi);
            let err = |h: f64| (fd_angular_laplacian(f, theta, phi, h).unwrap() - target).abs();
            let ratio = err(0.02) / err(0.01);
            assert!((3.5..=4.5).contains(&ratio), "l={l} {e:?} ratio {ratio}");
        }
    }
}
