//! Index bookkeeping for symmetric tensors.
//!
//! A component of a symmetric rank-`l` tensor over `n` dimensions is named by
//! its exponent vector `(e_1, ..., e_n)`, `sum e_i = l`: how many times each
//! index value occurs. Components are stored in reverse-lexicographic order
//! of exponent vectors, so for `n = 3, l = 2` the order is
//! `xx, xy, xz, yy, yz, zz`.
//!
//! Every permutation-count weight used by the tensor code comes from
//! [`multiplicity`].

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub type Exponents = Vec<u32>;

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of independent components, `C(rank + dim - 1, dim - 1)`.
pub fn count(rank: usize, dim: usize) -> usize {
    if dim == 0 {
        return usize::from(rank == 0);
    }
    binom(rank + dim - 1, dim - 1)
}

/// All exponent vectors of total `rank` in storage order.
pub fn compositions(rank: usize, dim: usize) -> Vec<Exponents> {
    let mut out = Vec::with_capacity(count(rank, dim));
    if dim == 0 {
        if rank == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0u32; dim];
    fill(&mut out, &mut current, 0, rank as u32);
    out
}

fn fill(out: &mut Vec<Exponents>, current: &mut Exponents, slot: usize, remaining: u32) {
    if slot + 1 == current.len() {
        current[slot] = remaining;
        out.push(current.clone());
        return;
    }
    for v in (0..=remaining).rev() {
        current[slot] = v;
        fill(out, current, slot + 1, remaining - v);
    }
}

/// Storage position of an exponent vector.
pub fn position(exps: &[u32]) -> usize {
    let dim = exps.len();
    if dim <= 1 {
        return 0;
    }
    let mut remaining: u32 = exps.iter().sum();
    let mut pos = 0;
    for (slot, &e) in exps.iter().enumerate().take(dim - 1) {
        let parts_after = dim - slot - 1;
        for v in (e + 1)..=remaining {
            pos += binom((remaining - v) as usize + parts_after - 1, parts_after - 1);
        }
        remaining -= e;
    }
    pos
}

/// Exponent vector of a full index tuple (entries in `0..dim`).
pub fn from_indices(indices: &[usize], dim: usize) -> Result<Exponents> {
    let mut exps = vec![0u32; dim];
    for &i in indices {
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        exps[i] += 1;
    }
    Ok(exps)
}

/// Sorted index tuple representing an exponent vector.
pub fn to_indices(exps: &[u32]) -> Vec<usize> {
    let mut out = Vec::with_capacity(exps.iter().sum::<u32>() as usize);
    for (i, &e) in exps.iter().enumerate() {
        out.extend(core::iter::repeat_n(i, e as usize));
    }
    out
}

/// Number of distinct index tuples with these exponents:
/// `l! / (e_1! ... e_n!)`. Exact for ranks up to 33.
pub fn multiplicity(exps: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    let mut seen: u128 = 0;
    for &e in exps {
        for j in 1..=e as u128 {
            seen += 1;
            // acc * seen / j stays integral: it is a running binomial product
            acc = acc * seen / j;
        }
    }
    acc
}

/// Number of perfect pairings of `l` slots such that both slots of every
/// pair carry the same index value, i.e. `prod (e_i - 1)!!`. `None` when
/// some exponent is odd.
pub fn pairing_count(exps: &[u32]) -> Option<u128> {
    let mut acc: u128 = 1;
    for &e in exps {
        if e % 2 == 1 {
            return None;
        }
        let mut k = e as u128;
        while k > 1 {
            acc *= k - 1;
            k -= 2;
        }
    }
    Some(acc)
}

/// `(l - 1)!!` for even `l`, the total number of perfect pairings.
pub fn total_pairings(rank: usize) -> u128 {
    let mut acc: u128 = 1;
    let mut k = rank as u128;
    while k > 1 {
        acc *= k - 1;
        k -= 2;
    }
    acc
}

pub fn add(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b` when `b <= a` componentwise.
pub fn checked_sub(a: &[u32], b: &[u32]) -> Option<Exponents> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

/// Calls `f(part, rest, ways)` for every split `exps = part + rest` with
/// `|part| = size`, where `ways = prod C(e_i, part_i)` counts the index
/// subsets of one tuple that realize the split.
pub fn for_each_split(exps: &[u32], size: u32, mut f: impl FnMut(&[u32], &[u32], u128)) {
    let total: u32 = exps.iter().sum();
    if size > total {
        return;
    }
    let mut part = vec![0u32; exps.len()];
    let mut rest = exps.to_vec();
    // suffix sums bound how much the remaining slots can still absorb
    let mut room = vec![0u32; exps.len() + 1];
    for i in (0..exps.len()).rev() {
        room[i] = room[i + 1] + exps[i];
    }
    split_slot(exps, &room, 0, size, 1, &mut part, &mut rest, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn split_slot(
    exps: &[u32],
    room: &[u32],
    slot: usize,
    left: u32,
    ways: u128,
    part: &mut [u32],
    rest: &mut [u32],
    f: &mut impl FnMut(&[u32], &[u32], u128),
) {
    if slot == exps.len() {
        if left == 0 {
            f(part, rest, ways);
        }
        return;
    }
    let e = exps[slot];
    let lo = left.saturating_sub(room[slot + 1]);
    for j in lo..=e.min(left) {
        part[slot] = j;
        rest[slot] = e - j;
        let w = ways * binom(e as usize, j as usize) as u128;
        split_slot(exps, room, slot + 1, left - j, w, part, rest, f);
    }
    part[slot] = 0;
    rest[slot] = e;
}

pub fn unit(slot: usize, dim: usize, times: u32) -> Exponents {
    let mut e = vec![0u32; dim];
    e[slot] = times;
    e
}
