//! Exact sparse linear algebra over `Q` and `Q(zeta_l)`.
//!
//! Everything is built on one primitive: an incrementally maintained,
//! fully reduced row-echelon form. Kernels, spans, sums, intersections and
//! coordinate solves are all expressed through it.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycloNum;

/// Exact field element usable by the solvers.
pub trait Scalar: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for CycloNum {
    fn is_zero(&self) -> bool {
        CycloNum::is_zero(self)
    }
    fn is_one(&self) -> bool {
        CycloNum::is_one(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Scalar> Default for SparseVec<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> SparseVec<T> {
    pub fn new() -> Self {
        Self { entries: vec![] }
    }

    /// Builds from unordered pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, T)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, T)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.plus(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Self { entries }
    }

    pub fn unit(i: usize, one: T) -> Self {
        Self {
            entries: vec![(i, one)],
        }
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, T)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, T)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v.times(c))).collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &T, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.times(c)));
                        b.next();
                    } else {
                        let s = x.plus(&y.times(c));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.times(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.one_like(), other),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&v.one_like().negated(), other),
        }
    }

    pub fn dot(&self, other: &Self) -> Option<T> {
        let mut acc: Option<T> = None;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                let p = x.times(y);
                acc = Some(match acc {
                    None => p,
                    Some(s) => s.plus(&p),
                });
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Re-indexes entries by `offset`, used to concatenate vectors.
    pub fn shifted(&self, offset: usize) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Splits at `at`: entries below go left, the rest are shifted down into the right half.
    pub fn split(&self, at: usize) -> (Self, Self) {
        let k = self.entries.partition_point(|e| e.0 < at);
        let left = Self {
            entries: self.entries[..k].to_vec(),
        };
        let right = Self {
            entries: self.entries[k..].iter().map(|(i, v)| (i - at, v.clone())).collect(),
        };
        (left, right)
    }

    pub fn concat(&self, other: &Self, offset: usize) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, v)| (i + offset, v.clone())));
        Self { entries }
    }
}

/// Fully reduced row-echelon basis of a row space.
///
/// Every row has leading entry 1 at its pivot column, and every other row is
/// zero at that column.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    ncols: usize,
    // sorted by pivot
    rows: Vec<SparseVec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Echelon<T> {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec<T>>>(ncols: usize, rows: I) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut coeffs: Vec<(usize, T)> = vec![];
        for (i, x) in v.entries() {
            if let Ok(k) = self.pivots.binary_search(i) {
                coeffs.push((k, x.clone()));
            }
        }
        let mut out = v.clone();
        for (k, x) in coeffs {
            out = out.axpy(&x.negated(), &self.rows[k]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<T>) -> bool {
        let r = self.reduce(&v);
        let Some((p, lead)) = r.leading().cloned() else {
            return false;
        };
        let inv = lead.try_inv().expect("nonzero pivot is invertible");
        let r = r.scale(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(p).cloned() {
                *row = row.axpy(&c.negated(), &r);
            }
        }
        let k = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(k, p);
        self.rows.insert(k, r);
        true
    }

    /// Basis of `{x : row . x = 0 for every row}`.
    pub fn kernel(&self, one: &T) -> Vec<SparseVec<T>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = vec![];
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut pairs = vec![(f, one.clone())];
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some(c) = row.get(f) {
                    pairs.push((p, c.negated()));
                }
            }
            basis.push(SparseVec::from_pairs(pairs));
        }
        basis
    }
}

/// Null space of the system whose equations are `rows`.
pub fn kernel<T: Scalar>(ncols: usize, rows: Vec<SparseVec<T>>, one: &T) -> Vec<SparseVec<T>> {
    Echelon::from_rows(ncols, rows).kernel(one)
}

/// A linear subspace of `T^n`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    echelon: Echelon<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            echelon: Echelon::new(ambient),
        }
    }

    pub fn span<I: IntoIterator<Item = SparseVec<T>>>(ambient: usize, vs: I) -> Self {
        Self {
            echelon: Echelon::from_rows(ambient, vs),
        }
    }

    pub fn ambient(&self) -> usize {
        self.echelon.ncols
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis(&self) -> &[SparseVec<T>] {
        self.echelon.rows()
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_space(&self, other: &Subspace<T>) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace<T>) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    pub fn sum(&self, other: &Subspace<T>) -> Subspace<T> {
        let mut e = self.echelon.clone();
        for v in other.basis() {
            e.insert(v.clone());
        }
        Subspace { echelon: e }
    }

    /// Zassenhaus: echelonise `(u | u)` and `(w | 0)`; rows with zero left half span the
    /// intersection in their right half.
    pub fn intersection(&self, other: &Subspace<T>) -> Subspace<T> {
        let n = self.ambient();
        let mut e = Echelon::new(2 * n);
        for u in self.basis() {
            e.insert(u.concat(u, n));
        }
        for w in other.basis() {
            e.insert(w.clone());
        }
        let vs = e
            .rows()
            .iter()
            .filter(|r| r.leading().is_some_and(|(i, _)| *i >= n))
            .map(|r| r.split(n).1)
            .collect::<Vec<_>>();
        Subspace::span(n, vs)
    }
}

/// Coordinates relative to a fixed, linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct CoordinateSystem<T> {
    ambient: usize,
    len: usize,
    augmented: Echelon<T>,
}

impl<T: Scalar> CoordinateSystem<T> {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(ambient: usize, family: &[SparseVec<T>]) -> Option<Self> {
        let mut augmented = Echelon::new(ambient + family.len());
        for (k, b) in family.iter().enumerate() {
            let one = b.leading()?.1.one_like();
            augmented.insert(b.concat(&SparseVec::unit(k, one), ambient));
        }
        if augmented.pivots().iter().any(|&p| p >= ambient) {
            return None;
        }
        Some(Self {
            ambient,
            len: family.len(),
            augmented,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `c` with `v = sum c_k b_k`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec<T>) -> Option<SparseVec<T>> {
        let r = self.augmented.reduce(v);
        let (left, right) = r.split(self.ambient);
        if !left.is_zero() {
            return None;
        }
        match right.leading() {
            None => Some(right),
            Some((_, x)) => Some(right.scale(&x.one_like().negated())),
        }
    }
}

/// Dense square matrix, used for the small multiplication operators of commutative algebras.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<Option<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![None; n * n],
        }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[SparseVec<T>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.entries() {
                m.data[i * n + j] = Some(v.clone());
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.data[i * self.n + j].as_ref()
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = if v.is_zero() { None } else { Some(v) };
    }

    pub fn trace(&self) -> Option<T> {
        let mut acc: Option<T> = None;
        for i in 0..self.n {
            if let Some(v) = self.get(i, i) {
                acc = Some(match acc {
                    None => v.clone(),
                    Some(a) => a.plus(v),
                });
            }
        }
        acc
    }

    pub fn row(&self, i: usize) -> SparseVec<T> {
        SparseVec::from_pairs(
            (0..self.n)
                .filter_map(|j| self.get(i, j).map(|v| (j, v.clone())))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let Some(a) = self.get(i, k) else { continue };
                for j in 0..n {
                    if let Some(b) = other.get(k, j) {
                        let p = a.times(b);
                        let slot = &mut out.data[i * n + j];
                        *slot = match slot.take() {
                            None => Some(p),
                            Some(s) => Some(s.plus(&p)),
                        };
                    }
                }
            }
        }
        for s in &mut out.data {
            if s.as_ref().is_some_and(|v| v.is_zero()) {
                *s = None;
            }
        }
        out
    }

    /// `self - c * I`
    pub fn shift_diagonal(&self, c: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            let v = match self.get(i, i) {
                Some(a) => a.minus(c),
                None => c.negated(),
            };
            out.set(i, i, v);
        }
        out
    }

    pub fn apply(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut pairs = vec![];
        for (j, x) in v.entries() {
            for i in 0..self.n {
                if let Some(a) = self.get(i, *j) {
                    pairs.push((i, a.times(x)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn kernel(&self, one: &T) -> Vec<SparseVec<T>> {
        kernel(self.n, (0..self.n).map(|i| self.row(i)).collect(), one)
    }
}
