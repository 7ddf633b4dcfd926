//! Fully symmetric tensors in compact storage, and symmetric detracing.
//!
//! Symmetrization is the normalized one: `T_(i1...il)` is the average over
//! all `l!` index permutations. Under that convention the rank-2 detracing
//! coefficient is `-1/3`, the rank-3 one `-3/5`, and so on.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, factorial, Rational, Scalar};
use crate::multiset::{self, Exponents};
use crate::{Error, Result};

/// Rank-`l` symmetric tensor over `dim` dimensions, one stored component per
/// exponent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<S> {
    rank: usize,
    dim: usize,
    comps: Vec<S>,
}

/// A possibly non-symmetric tensor given as a sparse map from full index
/// tuples to values. Only used as input to [`symmetrize`].
#[derive(Clone, Debug, PartialEq)]
pub struct FullTensor<S> {
    rank: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> FullTensor<S> {
    pub fn new(rank: usize, dim: usize) -> Self {
        FullTensor {
            rank,
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(rank: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, S)>,
    {
        let mut t = FullTensor::new(rank, dim);
        for (idx, v) in entries {
            t.insert(idx, v)?;
        }
        Ok(t)
    }

    /// Builds a tensor from a dense array laid out with the first index most
    /// significant.
    pub fn from_dense(rank: usize, dim: usize, dense: &[S]) -> Result<Self> {
        let expected = dim.pow(rank as u32);
        if dense.len() != expected {
            return Err(Error::RankMismatch {
                expected,
                found: dense.len(),
            });
        }
        let mut t = FullTensor::new(rank, dim);
        for (flat, v) in dense.iter().enumerate() {
            if !v.is_zero() {
                t.entries.insert(unflatten(flat, rank, dim), v.clone());
            }
        }
        Ok(t)
    }

    pub fn insert(&mut self, index: Vec<usize>, value: S) -> Result<()> {
        if index.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: index.len(),
            });
        }
        if let Some(&bad) = index.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        self.entries.insert(index, value);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, index: &[usize]) -> S {
        self.entries.get(index).cloned().unwrap_or_else(S::zero)
    }
}

fn unflatten(mut flat: usize, rank: usize, dim: usize) -> Vec<usize> {
    let mut idx = vec![0usize; rank];
    for slot in (0..rank).rev() {
        idx[slot] = flat % dim;
        flat /= dim;
    }
    idx
}

/// Symmetric part of a full tensor: each component is the average of the
/// input over all index orderings of its multiset.
pub fn symmetrize<S: Scalar>(t: &FullTensor<S>) -> SymTensor<S> {
    let mut out = SymTensor::<S>::zeros(t.rank, t.dim);
    for (idx, v) in &t.entries {
        // indices were validated on insert
        let exps = multiset::from_indices(idx, t.dim).expect("validated index");
        let pos = multiset::position(&exps);
        out.comps[pos] = out.comps[pos].clone() + v.clone();
    }
    for (exps, c) in multiset::compositions(t.rank, t.dim)
        .iter()
        .zip(out.comps.iter_mut())
    {
        let m = multiset::multiplicity(exps);
        *c = c.clone() * S::from_ratio(1, m);
    }
    out
}

impl<S: Scalar> SymTensor<S> {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        SymTensor {
            rank,
            dim,
            comps: vec![S::zero(); multiset::count(rank, dim)],
        }
    }

    /// Rank-0 tensor over three dimensions.
    pub fn scalar(value: S) -> Self {
        SymTensor {
            rank: 0,
            dim: 3,
            comps: vec![value],
        }
    }

    pub fn from_fn(rank: usize, dim: usize, mut f: impl FnMut(&[u32]) -> S) -> Self {
        let comps = multiset::compositions(rank, dim)
            .iter()
            .map(|e| f(e))
            .collect();
        SymTensor { rank, dim, comps }
    }

    /// Components must be in storage order (see [`crate::multiset`]).
    pub fn from_components(rank: usize, dim: usize, comps: Vec<S>) -> Result<Self> {
        let expected = multiset::count(rank, dim);
        if comps.len() != expected {
            return Err(Error::RankMismatch {
                expected,
                found: comps.len(),
            });
        }
        Ok(SymTensor { rank, dim, comps })
    }

    /// Kronecker delta.
    pub fn identity(dim: usize) -> Self {
        SymTensor::from_fn(
            2,
            dim,
            |e| {
                if e.contains(&2) {
                    S::one()
                } else {
                    S::zero()
                }
            },
        )
    }

    /// `v ⊗ v ⊗ ... ⊗ v` (`rank` factors).
    pub fn outer_power(v: &[S], rank: usize) -> Self {
        SymTensor::from_fn(rank, v.len(), |e| monomial(v, e))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[S] {
        &self.comps
    }

    pub fn get(&self, exps: &[u32]) -> &S {
        debug_assert_eq!(exps.len(), self.dim);
        debug_assert_eq!(exps.iter().sum::<u32>() as usize, self.rank);
        &self.comps[multiset::position(exps)]
    }

    pub fn set(&mut self, exps: &[u32], value: S) {
        debug_assert_eq!(exps.iter().sum::<u32>() as usize, self.rank);
        let pos = multiset::position(exps);
        self.comps[pos] = value;
    }

    /// Component at a full index tuple; any ordering of the same multiset
    /// reads the same storage slot.
    pub fn get_indices(&self, index: &[usize]) -> Result<&S> {
        if index.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: index.len(),
            });
        }
        let exps = multiset::from_indices(index, self.dim)?;
        Ok(self.get(&exps))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Exponents, &S)> {
        multiset::compositions(self.rank, self.dim)
            .into_iter()
            .zip(self.comps.iter())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymTensor<T> {
        SymTensor {
            rank: self.rank,
            dim: self.dim,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        SymTensor {
            rank: self.rank,
            dim: self.dim,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Largest componentwise difference, as a float.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Contraction of the index pair `pair`. For a symmetric tensor the result
    /// does not depend on which pair is chosen; the pair is only validated.
    pub fn trace(&self, pair: (usize, usize)) -> Result<Self> {
        if self.rank < 2 {
            return Err(Error::RankTooLow {
                min: 2,
                found: self.rank,
            });
        }
        let (a, b) = pair;
        if a == b || a >= self.rank || b >= self.rank {
            return Err(Error::InvalidPair(a, b, self.rank));
        }
        Ok(self.trace_once())
    }

    fn trace_once(&self) -> Self {
        let dim = self.dim;
        SymTensor::from_fn(self.rank - 2, dim, |e| {
            let mut acc = S::zero();
            let mut probe: Exponents = e.to_vec();
            for a in 0..dim {
                probe[a] += 2;
                acc = acc + self.get(&probe).clone();
                probe[a] -= 2;
            }
            acc
        })
    }

    /// `k` successive traces, `S_{j1 j1 ... jk jk i...}`.
    pub fn trace_k(&self, k: usize) -> Result<Self> {
        if 2 * k > self.rank {
            return Err(Error::RankTooLow {
                min: 2 * k,
                found: self.rank,
            });
        }
        let mut t = self.clone();
        for _ in 0..k {
            t = t.trace_once();
        }
        Ok(t)
    }

    /// Largest magnitude over all components of the single trace, zero for
    /// ranks below two.
    pub fn max_trace(&self) -> f64 {
        if self.rank < 2 {
            0.0
        } else {
            self.trace_once().max_abs()
        }
    }

    /// Symmetrized outer product `(A ⊗ B)_(i1 ... i_{p+q})`.
    pub fn sym_outer(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let p = self.rank;
        let total = multiset::binom(self.rank + other.rank, p) as u128;
        Ok(SymTensor::from_fn(self.rank + other.rank, self.dim, |e| {
            let mut acc = S::zero();
            multiset::for_each_split(e, p as u32, |e1, e2, ways| {
                let a = self.get(e1);
                if a.is_zero() {
                    return;
                }
                let b = other.get(e2);
                if b.is_zero() {
                    return;
                }
                acc = acc.clone() + S::from_ratio(ways as i128, total) * a.clone() * b.clone();
            });
            acc
        }))
    }

    /// `A_{i1...il} B_{i1...il}`.
    pub fn contract_full(&self, other: &Self) -> Result<S> {
        self.check_shape(other)?;
        Ok(self.weighted_sum(other, |a, b| a.clone() * b.clone()))
    }

    /// `conj(A)_{i1...il} B_{i1...il}`.
    pub fn contract_conj(&self, other: &Self) -> Result<S> {
        self.check_shape(other)?;
        Ok(self.weighted_sum(other, |a, b| a.conj() * b.clone()))
    }

    fn weighted_sum(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> S {
        self.iter()
            .zip(&other.comps)
            .fold(S::zero(), |acc, ((e, a), b)| {
                let m = multiset::multiplicity(&e);
                acc + S::from_ratio(m as i128, 1) * f(a, b)
            })
    }

    /// `v_j T_{j i2 ... il}`.
    pub fn contract_vector(&self, v: &[S]) -> Result<Self> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch(self.dim, v.len()));
        }
        if self.rank == 0 {
            return Err(Error::RankTooLow { min: 1, found: 0 });
        }
        let dim = self.dim;
        Ok(SymTensor::from_fn(self.rank - 1, dim, |e| {
            let mut probe: Exponents = e.to_vec();
            let mut acc = S::zero();
            for (a, va) in v.iter().enumerate() {
                probe[a] += 1;
                acc = acc + va.clone() * self.get(&probe).clone();
                probe[a] -= 1;
            }
            acc
        }))
    }

    /// Dense array of all `dim^rank` components, first index most significant.
    pub fn to_dense(&self) -> Vec<S> {
        let n = self.dim.pow(self.rank as u32);
        (0..n)
            .map(|flat| {
                let idx = unflatten(flat, self.rank, self.dim);
                let exps = multiset::from_indices(&idx, self.dim).expect("in range");
                self.get(&exps).clone()
            })
            .collect()
    }

    /// Reads a dense array that is already symmetric, taking the component
    /// at each multiset's sorted index tuple.
    pub fn from_dense_symmetric(rank: usize, dim: usize, dense: &[S]) -> Result<Self> {
        let expected = dim.pow(rank as u32);
        if dense.len() != expected {
            return Err(Error::RankMismatch {
                expected,
                found: dense.len(),
            });
        }
        Ok(SymTensor::from_fn(rank, dim, |e| {
            let idx = multiset::to_indices(e);
            let flat = idx.iter().fold(0usize, |acc, &i| acc * dim + i);
            dense[flat].clone()
        }))
    }

    /// Symmetric trace-free part in three dimensions, using
    /// `T_{i1...il} = 1/C(2l,l) sum_k (-1)^k C(l,k) C(2l-2k,l) S_{(k traces) (i...} δ...δ_{...)}`.
    pub fn detrace(&self) -> Result<StfTensor<S>> {
        if self.dim != 3 {
            return Err(Error::DimMismatch(3, self.dim));
        }
        let l = self.rank;
        let norm = binomial(2 * l, l);
        let t = self.detrace_with(|k| {
            let sign = if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            Rational::new(
                sign * binomial(l, k) * binomial(2 * l - 2 * k, l),
                norm.clone(),
            )
        })?;
        Ok(StfTensor(t))
    }

    /// Symmetric trace-free part over `dim >= 2` dimensions, from the
    /// Gamma-function form of the detracing coefficients. In three dimensions
    /// this agrees with [`SymTensor::detrace`].
    pub fn detrace_general(&self) -> Result<SymTensor<S>> {
        if self.dim < 2 {
            return Err(Error::DimTooSmall {
                min: 2,
                found: self.dim,
            });
        }
        let l = self.rank;
        let n = self.dim;
        self.detrace_with(|k| general_detrace_coefficient(l, k, n))
    }

    fn detrace_with(&self, coeff: impl Fn(usize) -> Rational) -> Result<SymTensor<S>> {
        let mut out = SymTensor::zeros(self.rank, self.dim);
        let mut traced = self.clone();
        let delta = SymTensor::<S>::identity(self.dim);
        let mut deltas = SymTensor::from_fn(0, self.dim, |_| S::one());
        for k in 0..=self.rank / 2 {
            if k > 0 {
                traced = traced.trace_once();
                deltas = deltas.sym_outer(&delta)?;
            }
            let c = coeff(k);
            if c.is_zero() {
                continue;
            }
            let term = traced.sym_outer(&deltas)?.scale(&S::from_rational(&c));
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// `(-1)^k / 4^k * l! Γ(n/2 + l - k - 1) / ((l-2k)! k! Γ(n/2 + l - 1))`.
pub fn general_detrace_coefficient(l: usize, k: usize, n: usize) -> Rational {
    let mut c = Rational::new(
        factorial(l),
        factorial(l - 2 * k) * factorial(k) * (BigInt::one() << (2 * k)),
    );
    // Γ(x - k) / Γ(x) with x = n/2 + l - 1, as 1 / prod_{j=1..k} (x - j)
    for j in 1..=k {
        let twice = (n + 2 * l) as i64 - 2 - 2 * j as i64;
        c *= Rational::new(BigInt::from(2), BigInt::from(twice));
    }
    if k % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `prod v_i^{e_i}`.
pub fn monomial<S: Scalar>(v: &[S], exps: &[u32]) -> S {
    let mut acc = S::one();
    for (x, &e) in v.iter().zip(exps) {
        for _ in 0..e {
            acc = acc * x.clone();
        }
    }
    acc
}

/// Symmetrized product of `rank / 2` Kronecker deltas,
/// `δ_(i1 i2 δ_i3 i4 ... δ_{i_{l-1} i_l)}`.
pub fn delta_product<S: Scalar>(rank: usize, dim: usize) -> Result<SymTensor<S>> {
    if rank % 2 == 1 {
        return Err(Error::OddRank(rank));
    }
    let delta = SymTensor::<S>::identity(dim);
    let mut acc = SymTensor::from_fn(0, dim, |_| S::one());
    for _ in 0..rank / 2 {
        acc = acc.sym_outer(&delta)?;
    }
    Ok(acc)
}

/// Symmetric and traceless tensor in three dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct StfTensor<S>(SymTensor<S>);

impl<S: Scalar> StfTensor<S> {
    /// Accepts `t` if every trace component has magnitude at most `tol`
    /// (use `0.0` for exact scalars).
    pub fn try_from_sym(t: SymTensor<S>, tol: f64) -> Result<Self> {
        if t.dim != 3 {
            return Err(Error::DimMismatch(3, t.dim));
        }
        let residual = t.max_trace();
        if residual > tol {
            return Err(Error::NotTraceless(residual));
        }
        Ok(StfTensor(t))
    }

    pub(crate) fn new_unchecked(t: SymTensor<S>) -> Self {
        debug_assert_eq!(t.dim, 3);
        StfTensor(t)
    }

    pub fn zeros(rank: usize) -> Self {
        StfTensor(SymTensor::zeros(rank, 3))
    }

    pub fn as_sym(&self) -> &SymTensor<S> {
        &self.0
    }

    pub fn into_sym(self) -> SymTensor<S> {
        self.0
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StfTensor<T> {
        StfTensor(self.0.map(f))
    }

    pub fn scale(&self, s: &S) -> Self {
        StfTensor(self.0.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(StfTensor(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(StfTensor(self.0.sub(&other.0)?))
    }
}

impl<S> Deref for StfTensor<S> {
    type Target = SymTensor<S>;

    fn deref(&self) -> &SymTensor<S> {
        &self.0
    }
}

/// Tensor symmetric within a left block of indices and within a right block,
/// stored as one right-block tensor per left multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedTensor<S> {
    left_rank: usize,
    right_rank: usize,
    dim: usize,
    rows: Vec<SymTensor<S>>,
}

impl<S: Scalar> PairedTensor<S> {
    pub fn zeros(left_rank: usize, right_rank: usize, dim: usize) -> Self {
        PairedTensor {
            left_rank,
            right_rank,
            dim,
            rows: vec![SymTensor::zeros(right_rank, dim); multiset::count(left_rank, dim)],
        }
    }

    pub fn from_rows(left_rank: usize, dim: usize, rows: Vec<SymTensor<S>>) -> Result<Self> {
        let expected = multiset::count(left_rank, dim);
        if rows.len() != expected {
            return Err(Error::RankMismatch {
                expected,
                found: rows.len(),
            });
        }
        let right_rank = rows.first().map_or(0, |r| r.rank);
        if let Some(bad) = rows.iter().find(|r| r.rank != right_rank || r.dim != dim) {
            return Err(Error::RankMismatch {
                expected: right_rank,
                found: bad.rank,
            });
        }
        Ok(PairedTensor {
            left_rank,
            right_rank,
            dim,
            rows,
        })
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }

    pub fn right_rank(&self) -> usize {
        self.right_rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, left: &[u32], right: &[u32]) -> &S {
        self.rows[multiset::position(left)].get(right)
    }

    pub fn row(&self, left: &[u32]) -> &SymTensor<S> {
        &self.rows[multiset::position(left)]
    }

    pub fn rows(&self) -> &[SymTensor<S>] {
        &self.rows
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PairedTensor<T> {
        PairedTensor {
            left_rank: self.left_rank,
            right_rank: self.right_rank,
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.map(&f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SymTensor::is_zero)
    }
}

/// `δ_{i1}^{{j1} ... δ_{il}^{jl}}`: the orthogonal projector onto rank-`l`
/// trace-free tensors, left indices `i`, right indices `j`.
pub fn stf_projector(l: usize) -> PairedTensor<Rational> {
    let rows = multiset::compositions(l, 3)
        .iter()
        .map(|e| {
            let mut unit = SymTensor::<Rational>::zeros(l, 3);
            unit.set(
                e,
                Rational::new(BigInt::one(), BigInt::from(multiset::multiplicity(e))),
            );
            unit.detrace().expect("dim 3").into_sym()
        })
        .collect();
    PairedTensor::from_rows(l, 3, rows).expect("row count matches layout")
}
