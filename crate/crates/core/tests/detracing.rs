mod common;

use common::{delta, flat, r, tuples};
use proptest::prelude::*;
use stf_core::sym_tensor::{delta_product, symmetrize};
use stf_core::{FullTensor, Rational, SymTensor};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| r(n, d))
}

fn full_tensor(rank: usize) -> impl Strategy<Value = FullTensor<Rational>> {
    prop::collection::vec(rational(), 3usize.pow(rank as u32))
        .prop_map(move |dense| FullTensor::from_dense(rank, 3, &dense).unwrap())
}

fn sym_tensor(rank: usize) -> impl Strategy<Value = SymTensor<Rational>> {
    prop::collection::vec(rational(), stf_core::multiset::count(rank, 3))
        .prop_map(move |c| SymTensor::from_components(rank, 3, c).unwrap())
}

fn sym_tensor_up_to(max_rank: usize) -> impl Strategy<Value = SymTensor<Rational>> {
    (0..=max_rank).prop_flat_map(sym_tensor)
}

/// Symmetric part as a dense array.
fn dense_symmetric(t: &FullTensor<Rational>) -> Vec<Rational> {
    symmetrize(t).to_dense()
}

fn trace_once(s: &[Rational], rest: &[usize]) -> Rational {
    (0..3)
        .map(|a| {
            let mut idx = vec![a, a];
            idx.extend_from_slice(rest);
            s[flat(&idx)].clone()
        })
        .sum()
}

fn literal_rank2(s: &[Rational]) -> Vec<Rational> {
    let tr = trace_once(s, &[]);
    tuples(2)
        .iter()
        .map(|t| s[flat(t)].clone() - r(1, 3) * &tr * delta(t[0], t[1]))
        .collect()
}

fn literal_rank3(s: &[Rational]) -> Vec<Rational> {
    tuples(3)
        .iter()
        .map(|t| {
            let (i, j, k) = (t[0], t[1], t[2]);
            let corr = trace_once(s, &[i]) * delta(j, k)
                + trace_once(s, &[j]) * delta(i, k)
                + trace_once(s, &[k]) * delta(i, j);
            s[flat(t)].clone() - r(1, 5) * corr
        })
        .collect()
}

fn literal_rank4(s: &[Rational]) -> Vec<Rational> {
    let double: Rational = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .map(|(a, b)| s[flat(&[a, a, b, b])].clone())
        .sum();
    tuples(4)
        .iter()
        .map(|t| {
            let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
            let tr = |p: usize, q: usize| trace_once(s, &[p, q]);
            let single = tr(i, j) * delta(k, l)
                + tr(i, k) * delta(j, l)
                + tr(i, l) * delta(j, k)
                + tr(j, k) * delta(i, l)
                + tr(j, l) * delta(i, k)
                + tr(k, l) * delta(i, j);
            let dd =
                (delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k))
                    / r(3, 1);
            s[flat(t)].clone() - r(1, 7) * single + r(3, 35) * &double * dd
        })
        .collect()
}

fn check_literal(t: &FullTensor<Rational>, literal: fn(&[Rational]) -> Vec<Rational>) {
    let rank = t.rank();
    let expected = literal(&dense_symmetric(t));
    let got = symmetrize(t).detrace().unwrap().to_dense();
    assert_eq!(got.len(), expected.len());
    for (idx, (a, b)) in tuples(rank).iter().zip(got.iter().zip(&expected)) {
        assert_eq!(a, b, "component {idx:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_two_matches_explicit_formula(t in full_tensor(2)) {
        check_literal(&t, literal_rank2);
    }

    #[test]
    fn rank_three_matches_explicit_formula(t in full_tensor(3)) {
        check_literal(&t, literal_rank3);
    }

    #[test]
    fn rank_four_matches_explicit_formula(t in full_tensor(4)) {
        check_literal(&t, literal_rank4);
    }

    #[test]
    fn detracing_is_idempotent_and_traceless(t in sym_tensor_up_to(8)) {
        let d = t.detrace().unwrap();
        if d.rank() >= 2 {
            prop_assert!(d.trace((0, 1)).unwrap().is_zero());
        }
        prop_assert_eq!(d.detrace().unwrap(), d);
    }

    #[test]
    fn contraction_needs_only_one_detraced_factor(
        (a, b) in (0usize..=5).prop_flat_map(|k| (sym_tensor(k), sym_tensor(k)))
    ) {
        let db = b.detrace().unwrap();
        let lhs = a.contract_full(&db).unwrap();
        let rhs = a.detrace().unwrap().contract_full(&db).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anything_containing_a_delta_detraces_to_zero(t in sym_tensor_up_to(5)) {
        let with_delta = t.sym_outer(&SymTensor::identity(3)).unwrap();
        prop_assert!(with_delta.detrace().unwrap().is_zero());
    }

    #[test]
    fn general_dimension_agrees_in_three(t in sym_tensor_up_to(6)) {
        prop_assert_eq!(t.detrace_general().unwrap(), t.detrace().unwrap().into_sym());
    }

    #[test]
    fn general_dimension_is_traceless(
        (dim, rank) in (2usize..=5, 2usize..=5),
        seed in any::<u64>(),
    ) {
        let mut rng = common::rng(seed);
        let t = SymTensor::from_fn(rank, dim, |_| common::random_rational(&mut rng));
        let d = t.detrace_general().unwrap();
        prop_assert!(d.trace((0, 1)).unwrap().is_zero());
        prop_assert_eq!(d.detrace_general().unwrap(), d);
    }

    #[test]
    fn symmetrization_ignores_index_order(t in full_tensor(3)) {
        let s = symmetrize(&t);
        for idx in tuples(3) {
            let mut rev = idx.clone();
            rev.reverse();
            prop_assert_eq!(s.get_indices(&idx).unwrap(), s.get_indices(&rev).unwrap());
        }
    }
}

#[test]
fn delta_detraces_to_zero() {
    assert!(SymTensor::<Rational>::identity(3)
        .detrace()
        .unwrap()
        .is_zero());
}

#[test]
fn delta_product_counts_pairings() {
    for rank in (0..=10).step_by(2) {
        let d = delta_product::<Rational>(rank, 3).unwrap();
        let total = stf_core::multiset::total_pairings(rank) as i64;
        for (e, v) in d.iter() {
            let expected = stf_core::multiset::pairing_count(&e).map_or(0, |c| c as i64);
            assert_eq!(v, &r(expected, total), "{e:?}");
        }
    }
}
