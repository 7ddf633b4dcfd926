#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stf_core::{Rational, SymTensor, UnitVec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    r(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn random_sym(rng: &mut impl Rng, rank: usize) -> SymTensor<Rational> {
    SymTensor::from_fn(rank, 3, |_| random_rational(rng))
}

pub fn random_unit(rng: &mut impl Rng) -> UnitVec {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    UnitVec::from_angles(z.acos(), phi)
}

/// Rational point on the unit sphere by inverse stereographic projection.
pub fn rational_unit(a: i64, b: i64, c: i64) -> [Rational; 3] {
    let (a, b, c) = (r(a, c), r(b, c), r(1, 1));
    let s = &a * &a + &b * &b;
    let den = &s + &c;
    [r(2, 1) * &a / &den, r(2, 1) * &b / &den, (&s - &c) / &den]
}

/// All `3^rank` index tuples, first index most significant.
pub fn tuples(rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..3).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn flat(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * 3 + i)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Average of `f` over all orderings of the index tuple.
pub fn symmetrized<T>(idx: &[usize], f: impl Fn(&[usize]) -> T) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Div<Rational, Output = T>,
{
    let perms = permutations(idx.len());
    let count = perms.len() as i64;
    let mut terms = perms.iter().map(|p| {
        let permuted: Vec<usize> = p.iter().map(|&k| idx[k]).collect();
        f(&permuted)
    });
    let first = terms.next().expect("at least one ordering");
    terms.fold(first, |acc, t| acc + t) / r(count, 1)
}

pub fn delta(i: usize, j: usize) -> Rational {
    if i == j {
        r(1, 1)
    } else {
        r(0, 1)
    }
}
