mod common;

use std::f64::consts::PI;

use common::{delta, r, random_sym, random_unit, rational_unit, symmetrized, tuples};
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use stf_core::legendre::legendre_value;
use stf_core::maxwell::{
    angular_integral_monomial, expand, expand_truncated, funk_hecke, generating_closed_form,
    generating_partial_sum, integrate, integrate_product, link_to_legendre, maxwell_eval,
    maxwell_tensor, orthogonality_tensor, recurrence_check, rotate,
};
use stf_core::multiset::{self, compositions, from_indices};
use stf_core::oracle::{fd_angular_laplacian, unit_vector_integral_tensor, SphereQuadrature};
use stf_core::sym_tensor::delta_product;
use stf_core::{
    AngularPolynomial, Exact, MultipoleExpansion, Rational, RealScalar, Rotation, StfTensor,
    SymTensor, UnitVec,
};

fn pi_times(n: i64, d: i64) -> Exact {
    Exact::pi_multiple(r(n, d))
}

fn sample_points() -> Vec<[Rational; 3]> {
    vec![
        rational_unit(0, 0, 1),
        rational_unit(1, 2, 3),
        rational_unit(-3, 1, 2),
        rational_unit(5, -7, 4),
        rational_unit(2, 2, 9),
    ]
}

fn literal(l: usize, idx: &[usize], n: &[Rational; 3]) -> Rational {
    let nn = |i: usize| n[i].clone();
    match l {
        0 => r(1, 1),
        1 => nn(idx[0]),
        2 => (r(3, 1) * nn(idx[0]) * nn(idx[1]) - delta(idx[0], idx[1])) / r(2, 1),
        3 => {
            let cubic = nn(idx[0]) * nn(idx[1]) * nn(idx[2]);
            let mixed = symmetrized(idx, |t| nn(t[0]) * delta(t[1], t[2]));
            (r(5, 1) * cubic - r(3, 1) * mixed) / r(2, 1)
        }
        4 => {
            let quartic = nn(idx[0]) * nn(idx[1]) * nn(idx[2]) * nn(idx[3]);
            let mixed = symmetrized(idx, |t| nn(t[0]) * nn(t[1]) * delta(t[2], t[3]));
            let deltas = symmetrized(idx, |t| delta(t[0], t[1]) * delta(t[2], t[3]));
            (r(35, 1) * quartic - r(30, 1) * mixed + r(3, 1) * deltas) / r(8, 1)
        }
        _ => unreachable!(),
    }
}

#[test]
fn low_orders_match_explicit_forms() {
    for l in 0..=4 {
        let p = maxwell_tensor(l);
        for idx in tuples(l) {
            let comp = p.component(&from_indices(&idx, 3).unwrap());
            for n in sample_points() {
                assert_eq!(comp.eval_at(&n), literal(l, &idx, &n), "l={l} {idx:?}");
            }
        }
    }
}

#[test]
fn symbolic_multipoles_are_traceless() {
    for l in 0..=8 {
        assert!(maxwell_tensor(l).is_traceless(), "l={l}");
    }
}

#[test]
fn float_multipoles_are_traceless_and_match_symbolic() {
    let mut rng = common::rng(3);
    for l in 0..=8 {
        let p = maxwell_tensor(l);
        for _ in 0..5 {
            let n = random_unit(&mut rng);
            let t = maxwell_eval(l, &n);
            assert!(t.max_trace() < 1e-12);
            for (e, v) in t.iter() {
                assert!((p.component(&e).eval(&n) - v).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn evaluation_examples() {
    let z = UnitVec::new(0.0, 0.0, 1.0).unwrap();
    assert_eq!(maxwell_eval(1, &z).components(), &[0.0, 0.0, 1.0]);
    let p2 = maxwell_eval(2, &z);
    assert_eq!(p2.get(&[2, 0, 0]), &-0.5);
    assert_eq!(p2.get(&[0, 2, 0]), &-0.5);
    assert_eq!(p2.get(&[0, 0, 2]), &1.0);
    assert_eq!(p2.get(&[1, 1, 0]), &0.0);
    assert_eq!(
        maxwell_eval(0, &UnitVec::from_angles(0.3, 2.0)).components(),
        &[1.0]
    );
    assert!(UnitVec::new(1.0, 1.0, 0.0).is_err());
}

#[test]
fn multipoles_are_orthogonal_to_lower_monomials() {
    for l in 1..=6 {
        let p = maxwell_tensor(l);
        for lower in 0..l {
            for e in compositions(lower, 3) {
                let mono = AngularPolynomial::monomial([e[0], e[1], e[2]]);
                for (outer, comp) in p.iter() {
                    assert!(
                        integrate_product(comp, &mono).is_zero(),
                        "l={l} {outer:?} against {e:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn monomial_integrals_match_gamma_assembly() {
    for l in 0..=10 {
        let assembled = unit_vector_integral_tensor(l);
        for e in compositions(l, 3) {
            assert_eq!(&angular_integral_monomial(&e), assembled.get(&e), "{e:?}");
        }
    }
}

#[test]
fn monomial_integrals_follow_delta_products() {
    for l in (0..=10).step_by(2) {
        let d = delta_product::<Rational>(l, 3).unwrap();
        for (e, v) in d.iter() {
            let expected = Exact::pi_multiple(r(4, l as i64 + 1) * v);
            assert_eq!(angular_integral_monomial(&e), expected);
        }
    }
    for e in compositions(5, 3) {
        assert!(angular_integral_monomial(&e).is_zero());
    }
}

#[test]
fn monomial_integral_examples() {
    assert_eq!(angular_integral_monomial(&[0, 0, 0]), pi_times(4, 1));
    assert_eq!(angular_integral_monomial(&[2, 0, 0]), pi_times(4, 3));
    assert_eq!(angular_integral_monomial(&[2, 2, 0]), pi_times(4, 15));
    assert_eq!(angular_integral_monomial(&[4, 0, 0]), pi_times(4, 5));
    let quad = SphereQuadrature::for_degree(4);
    let a = quad.integrate(|n| n.x() * n.x() * n.y() * n.y());
    assert!((a - 4.0 * PI / 15.0).abs() < 1e-13);
    let a = quad.integrate(|n| n.x().powi(4));
    assert!((a - 4.0 * PI / 5.0).abs() < 1e-13);
}

#[test]
fn product_integral_examples() {
    let nz = AngularPolynomial::monomial([0, 0, 1]);
    assert_eq!(integrate_product(&nz, &nz), pi_times(4, 3));

    let p1 = maxwell_tensor(1);
    let p2 = maxwell_tensor(2);
    assert!(integrate_product(p1.component(&[1, 0, 0]), p2.component(&[0, 2, 0])).is_zero());

    let mut total = Exact::from(r(0, 1));
    for (e, comp) in p2.iter() {
        let weight = Exact::from(r(multiset::multiplicity(&e) as i64, 1));
        total = total + weight * integrate_product(comp, comp);
    }
    assert_eq!(total, pi_times(6, 1));
}

#[test]
fn orthogonality_tensor_examples() {
    assert!(orthogonality_tensor(1, 2).is_zero());
    let t = orthogonality_tensor(1, 1);
    for a in compositions(1, 3) {
        for b in compositions(1, 3) {
            let expected = if a == b {
                pi_times(4, 3)
            } else {
                pi_times(0, 1)
            };
            assert_eq!(t.get(&a, &b), &expected);
        }
    }
    assert_eq!(
        orthogonality_tensor(0, 0).get(&[0, 0, 0], &[0, 0, 0]),
        &pi_times(4, 1)
    );
}

#[test]
fn orthogonality_tensor_matches_symbolic_integrals() {
    for l in 0..=3 {
        for l2 in 0..=3 {
            let a = maxwell_tensor(l);
            let b = maxwell_tensor(l2);
            let t = orthogonality_tensor(l, l2);
            for (ea, pa) in a.iter() {
                for (eb, pb) in b.iter() {
                    assert_eq!(&integrate_product(pa, pb), t.get(&ea, &eb));
                }
            }
        }
    }
}

#[test]
fn orthogonality_tensor_matches_quadrature() {
    const LMAX: usize = 6;
    let quad = SphereQuadrature::new(12, 25);
    let nodes: Vec<(Vec<StfTensor<f64>>, f64)> = quad
        .nodes()
        .map(|(n, w)| ((0..=LMAX).map(|l| maxwell_eval(l, &n)).collect(), w))
        .collect();
    let mut worst: f64 = 0.0;
    for l in 0..=LMAX {
        for l2 in 0..=LMAX {
            let exact = orthogonality_tensor(l, l2);
            for ea in compositions(l, 3) {
                for eb in compositions(l2, 3) {
                    let mut acc = stf_core::oracle::CompensatedSum::new();
                    for (p, w) in &nodes {
                        acc.add(p[l].get(&ea) * p[l2].get(&eb) * w);
                    }
                    let q: f64 = acc.value();
                    worst = worst.max((q - exact.get(&ea, &eb).to_f64()).abs());
                }
            }
        }
    }
    assert!(worst < 1e-10, "worst {worst:e}");
}

#[test]
fn expansion_examples() {
    let q = SymTensor::from_dense_symmetric(
        2,
        3,
        &[
            r(1, 1),
            r(2, 1),
            r(0, 1),
            r(2, 1),
            r(3, 1),
            r(-1, 2),
            r(0, 1),
            r(-1, 2),
            r(-4, 1),
        ],
    )
    .unwrap();
    let f = AngularPolynomial::from_terms(vec![q.clone()]).unwrap();
    let e = expand(&f);
    assert_eq!(e.get(2).unwrap().as_sym(), &q.scale(&r(2, 3)));
    assert!(e.get(0).map_or(true, |t| t.is_zero()));

    let one = expand(&AngularPolynomial::constant(r(1, 1)));
    assert_eq!(one.len(), 1);
    assert_eq!(one.get(0).unwrap().components(), &[r(1, 1)]);

    let xx = expand(&AngularPolynomial::monomial([2, 0, 0]));
    assert_eq!(xx.get(0).unwrap().components(), &[r(1, 3)]);
    let ex = SymTensor::outer_power(&[r(1, 1), r(0, 1), r(0, 1)], 2);
    assert_eq!(xx.get(2).unwrap(), &ex.detrace().unwrap().scale(&r(2, 3)));

    let quad = SphereQuadrature::for_degree(4);
    for (l, t) in xx.iter() {
        for (e, v) in t.iter() {
            let lead = stf_core::legendre::leading_coefficient(l);
            let moment = quad.integrate(|n| maxwell_eval(l, n).get(&e) * n.x() * n.x());
            let projected = (2 * l + 1) as f64 / (4.0 * PI) / lead.to_f64() * moment;
            assert!((projected - v.to_f64()).abs() < 1e-13);
        }
    }
}

#[test]
fn parity_and_truncation() {
    let odd = expand(&AngularPolynomial::monomial([3, 0, 0]));
    assert_eq!(odd.iter().map(|(l, _)| l).collect::<Vec<_>>(), vec![1, 3]);
    let f = AngularPolynomial::monomial([3, 0, 0]).add(&AngularPolynomial::monomial([0, 1, 1]));
    assert_eq!(
        expand(&f).iter().map(|(l, _)| l).collect::<Vec<_>>(),
        vec![0, 1, 2, 3]
    );
    let (t, dropped) = expand_truncated(&f, 2);
    assert!(dropped);
    assert_eq!(t.max_l(), Some(2));
    let (_, dropped) = expand_truncated(&f, 3);
    assert!(!dropped);
}

fn random_polynomial(rng: &mut impl rand::Rng, max_rank: usize) -> AngularPolynomial {
    AngularPolynomial::from_terms((0..=max_rank).map(|k| random_sym(rng, k)).collect()).unwrap()
}

#[test]
fn completeness_is_exact() {
    let mut rng = common::rng(11);
    for _ in 0..10 {
        let f = random_polynomial(&mut rng, 6);
        let e = expand(&f);
        assert!(e.to_polynomial().equals_on_sphere(&f));
        for n in sample_points() {
            assert_eq!(e.to_polynomial().eval_at(&n), f.eval_at(&n));
        }
    }
}

#[test]
fn completeness_in_floating_point() {
    let mut rng = common::rng(12);
    let f = random_polynomial(&mut rng, 6);
    let e = expand(&f).map(RealScalar::to_f64);
    for _ in 0..100 {
        let n = random_unit(&mut rng);
        assert!((e.reconstruct(&n) - f.eval(&n)).abs() < 1e-12);
    }
    let nz2 = expand(&AngularPolynomial::monomial([0, 0, 2])).map(RealScalar::to_f64);
    assert!((nz2.reconstruct(&UnitVec::new(0.0, 0.0, 1.0).unwrap()) - 1.0).abs() < 1e-15);
    let mut unit = MultipoleExpansion::<f64>::new();
    unit.insert(
        0,
        StfTensor::try_from_sym(SymTensor::scalar(1.0), 0.0).unwrap(),
    )
    .unwrap();
    assert_eq!(unit.reconstruct(&UnitVec::from_angles(1.0, 2.0)), 1.0);
}

#[test]
fn parseval_matches_direct_integral() {
    let mut rng = common::rng(13);
    for _ in 0..5 {
        let f = random_polynomial(&mut rng, 5);
        let g = random_polynomial(&mut rng, 4);
        let direct = integrate_product(&f, &g);
        assert_eq!(expand(&f).parseval_exact(&expand(&g)), direct);
        let ff = expand(&f).map(RealScalar::to_f64);
        let gf = expand(&g).map(RealScalar::to_f64);
        assert!((ff.parseval(&gf) - direct.to_f64()).abs() < 1e-9 * direct.to_f64().abs().max(1.0));
    }
}

#[test]
fn integrate_agrees_with_quadrature() {
    let mut rng = common::rng(14);
    let f = random_polynomial(&mut rng, 6);
    let quad = SphereQuadrature::for_degree(6);
    let q = quad.integrate(|n| f.eval(n));
    assert!((integrate(&f).to_f64() - q).abs() < 1e-11);
}

#[test]
fn recurrences_hold() {
    let mut rng = common::rng(21);
    for l in 1..=8 {
        for _ in 0..50 {
            let res = recurrence_check(l, &random_unit(&mut rng)).unwrap();
            assert!(
                res.three_term < 1e-12 && res.contraction < 1e-12,
                "l={l} {res:?}"
            );
        }
    }
    let z = UnitVec::new(0.0, 0.0, 1.0).unwrap();
    let contracted = maxwell_eval(2, &z).contract_vector(&z.as_array()).unwrap();
    assert_eq!(contracted.components(), &[0.0, 0.0, 1.0]);
}

#[test]
fn first_recurrence_is_exact() {
    let p2 = maxwell_tensor(2);
    for n in sample_points() {
        for i in 0..3 {
            for j in 0..3 {
                let comp = p2.component(&from_indices(&[i, j], 3).unwrap()).eval_at(&n);
                let lhs = r(3, 1) * &n[i] * &n[j];
                assert_eq!(lhs, r(2, 1) * comp + delta(i, j));
            }
        }
    }
}

#[test]
fn link_to_legendre_polynomials() {
    let mut rng = common::rng(22);
    for l in 0..=8 {
        let lead = stf_core::legendre::leading_coefficient(l).to_f64();
        for _ in 0..50 {
            let n = random_unit(&mut rng);
            let s = random_unit(&mut rng);
            let p = legendre_value(l, n.dot(&s));
            let (a, b) = link_to_legendre(l, &n, &s);
            assert!((a - p).abs() < 1e-12, "l={l}");
            assert!((b - lead * p).abs() < 1e-12 * lead.max(1.0), "l={l}");
        }
        let (a, b) = link_to_legendre(
            l,
            &UnitVec::from_angles(0.4, 0.1),
            &UnitVec::from_angles(0.4, 0.1),
        );
        assert!((a - 1.0).abs() < 1e-12 && (b - lead).abs() < 1e-12 * lead);
    }
}

#[test]
fn funk_hecke_matches_sphere_quadrature() {
    let mut rng = common::rng(23);
    let quad = SphereQuadrature::new(24, 48);
    let nodes: Vec<(UnitVec, f64)> = quad.nodes().collect();
    for l in 0..=8 {
        let at_nodes: Vec<StfTensor<f64>> = nodes.iter().map(|(n, _)| maxwell_eval(l, n)).collect();
        let f = |x: f64| 1.0 + x - 2.0 * x.powi(3) + 0.5 * x.powi(l as i32 + 2);
        for _ in 0..5 {
            let s = random_unit(&mut rng);
            let analytic: StfTensor<f64> = funk_hecke(l, f, &s, 1e-14).unwrap();
            let mut q = SymTensor::<f64>::zeros(l, 3);
            for ((n, w), p) in nodes.iter().zip(&at_nodes) {
                q = q.add(&p.scale(&(w * f(n.dot(&s))))).unwrap();
            }
            let diff = analytic.max_abs_diff(&q).unwrap();
            assert!(diff < 1e-11, "l={l} diff {diff:e}");
        }
    }
}

#[test]
fn funk_hecke_with_plane_wave() {
    let kr = 3.7;
    let s = UnitVec::from_angles(0.9, -1.3);
    let wave = |x: f64| Complex64::new((kr * x).cos(), (kr * x).sin());
    let analytic: StfTensor<Complex64> = funk_hecke(2, wave, &s, 1e-14).unwrap();
    let quad = SphereQuadrature::new(40, 80);
    for (e, v) in analytic.iter() {
        let q = quad.integrate(|n| wave(n.dot(&s)) * maxwell_eval(2, n).get(&e));
        assert!((q - v).norm() < 1e-8, "{e:?}");
    }
}

#[test]
fn rotation_covariance() {
    let mut rng = common::rng(24);
    for l in 0..=8 {
        for _ in 0..50 {
            let axis = random_unit(&mut rng);
            let angle = rand::Rng::gen_range(&mut rng, -PI..PI);
            let rot = Rotation::about_axis(&axis, angle);
            let n = random_unit(&mut rng);
            let lhs = maxwell_eval(l, &rot.apply_unit(&n));
            let rhs = rotate(l, &rot, &maxwell_eval(l, &n)).unwrap();
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-11, "l={l}");
            assert!(rhs.max_trace() < 1e-11);
        }
    }
}

#[test]
fn rotation_examples() {
    let t = StfTensor::try_from_sym(
        SymTensor::from_components(1, 3, vec![1.0, 0.0, 0.0]).unwrap(),
        0.0,
    )
    .unwrap();
    let quarter = Rotation::about_axis(&UnitVec::new(0.0, 0.0, 1.0).unwrap(), PI / 2.0);
    let out = rotate(1, &quarter, &t).unwrap();
    assert!(out
        .components()
        .iter()
        .zip([0.0, 1.0, 0.0])
        .all(|(a, b)| (a - b).abs() < 1e-15));
    let p = maxwell_eval(4, &UnitVec::from_angles(0.3, 0.8));
    assert!(
        rotate(4, &Rotation::identity(), &p)
            .unwrap()
            .max_abs_diff(&p)
            .unwrap()
            < 1e-15
    );
    assert!(Rotation::new([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).is_err());
}

#[test]
fn generating_function() {
    let mut rng = common::rng(25);
    for _ in 0..20 {
        let n = random_unit(&mut rng);
        let q = random_unit(&mut rng).as_array().map(|c| 0.3 * c);
        let partial = generating_partial_sum(&n, q, 20).unwrap();
        assert!((partial - generating_closed_form(&n, q)).abs() < 1e-9);
    }
    let z = UnitVec::new(0.0, 0.0, 1.0).unwrap();
    assert_eq!(generating_closed_form(&z, [0.0, 0.0, 0.5]), 2.0);
    assert_eq!(generating_partial_sum(&z, [0.0; 3], 0).unwrap(), 1.0);
}

/// Error of the finite-difference Laplacian against `-l(l+1) f` at steps
/// `h` and `h/2`.
fn laplacian_errors(l: usize, e: &[u32], theta: f64, phi: f64, h: f64) -> (f64, f64) {
    let f = |t: f64, p: f64| *maxwell_eval(l, &UnitVec::from_angles(t, p)).get(e);
    let exact = -((l * (l + 1)) as f64) * f(theta, phi);
    let err = |h: f64| (fd_angular_laplacian(f, theta, phi, h).unwrap() - exact).abs();
    (err(h), err(h / 2.0))
}

#[test]
fn multipoles_are_laplacian_eigenfunctions() {
    let (theta, phi, h) = (1.1, 0.7, 0.02);
    for (e, _) in maxwell_eval(0, &UnitVec::from_angles(theta, phi)).iter() {
        let (a, b) = laplacian_errors(0, &e, theta, phi, h);
        assert!(a < 1e-9 && b < 1e-9);
    }
    for l in 1..=4 {
        for e in compositions(l, 3) {
            let (a, b) = laplacian_errors(l, &e, theta, phi, h);
            let ratio = a / b;
            assert!((3.5..=4.5).contains(&ratio), "l={l} {e:?} ratio {ratio}");
        }
    }
    let dipole = |t: f64, _: f64| t.cos();
    let v = fd_angular_laplacian(dipole, PI / 3.0, 0.0, 1e-3).unwrap();
    assert!((v + 2.0 * (PI / 3.0).cos()).abs() < 1e-6);
    assert!(fd_angular_laplacian(dipole, 0.05, 0.0, 1e-3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn expansion_reproduces_polynomials(seed in any::<u64>(), max_rank in 0usize..=6) {
        let mut rng = common::rng(seed);
        let f = random_polynomial(&mut rng, max_rank);
        let e = expand(&f);
        prop_assert!(e.max_l().unwrap_or(0) <= max_rank);
        for (_, t) in e.iter() {
            prop_assert!(t.rank() < 2 || t.trace((0, 1)).unwrap().is_zero());
        }
        prop_assert!(e.to_polynomial().equals_on_sphere(&f));
    }

    #[test]
    fn rotation_preserves_tracelessness(seed in any::<u64>(), l in 0usize..=6) {
        let mut rng = common::rng(seed);
        let t = random_sym(&mut rng, l).detrace().unwrap().map(RealScalar::to_f64);
        let rot = Rotation::about_axis(&random_unit(&mut rng), 1.234);
        let out = rotate(l, &rot, &t).unwrap();
        prop_assert!(out.max_trace() < 1e-10);
        let back = rotate(l, &Rotation::about_axis(&UnitVec::from_angles(0.0, 0.0), 0.0), &out).unwrap();
        prop_assert!(back.max_abs_diff(&out).unwrap() < 1e-15);
    }
}
