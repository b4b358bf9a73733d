//! Exact sparse vectors and matrices, rank/kernel/image decomposition and
//! incremental echelon spans.

use std::collections::{BTreeSet, HashMap};

use super::field::Field;
use crate::error::{Error, Result};

/// Column count from which elimination switches to the sparse path.
pub const DENSE_COLUMN_LIMIT: usize = 2000;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone + PartialEq> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, index: usize) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs<F: Field<Elem = E>>(field: &F, pairs: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut map: HashMap<usize, E> = HashMap::new();
        for (i, v) in pairs {
            let slot = map.entry(i).or_insert_with(|| field.zero());
            *slot = field.add(slot, &v);
        }
        let mut entries: Vec<(usize, E)> = map.into_iter().filter(|(_, v)| !field.is_zero(v)).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[E]) -> Self {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, E)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, index: usize) -> E {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => field.zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.mul(v, c))).collect(),
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, field.neg(v))).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy<F: Field<Elem = E>>(&self, field: &F, c: &E, other: &Self) -> Self {
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, field.mul(c, &other.entries[b].1)));
                b += 1;
            } else {
                let v = field.add(&self.entries[a].1, &field.mul(c, &other.entries[b].1));
                if !field.is_zero(&v) {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.axpy(field, &field.one(), other)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.axpy(field, &field.neg(&field.one()), other)
    }

    /// Reindexes entries through `map`, summing collisions.
    pub fn reindex<F: Field<Elem = E>>(&self, field: &F, map: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_pairs(field, self.entries.iter().map(|(i, v)| (map(*i), v.clone())))
    }

    pub fn shift(&self, offset: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Keeps the entries in `[start, start+len)` and shifts them down to 0.
    pub fn window(&self, start: usize, len: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }

    pub fn dot<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> E {
        let mut acc = field.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia == ib {
                acc = field.add(&acc, &field.mul(&self.entries[a].1, &other.entries[b].1));
                a += 1;
                b += 1;
            } else if ia < ib {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }
}

/// A column-major sparse matrix: `cols[j]` is the image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    cols: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> SparseMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(|i| SparseVec::unit(field, i)).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<E>>) -> Result<Self> {
        for (j, c) in cols.iter().enumerate() {
            if let Some(m) = c.max_index() {
                if m >= nrows {
                    return Err(Error::DimensionMismatch(format!(
                        "column {j} has entry at row {m} but the matrix has {nrows} rows"
                    )));
                }
            }
        }
        Ok(SparseMatrix { nrows, cols })
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>], ncols: usize) -> Self {
        let nrows = rows.len();
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !field.is_zero(v) {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix { nrows, cols: cols.into_iter().map(|entries| SparseVec { entries }).collect() }
    }

    pub fn from_i64_rows<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let conv: Vec<Vec<E>> = rows.iter().map(|r| r.iter().map(|v| field.from_i64(*v)).collect()).collect();
        Self::from_dense(field, &conv, ncols)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec<E> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, i: usize, j: usize) -> E {
        self.cols[j].get(field, i)
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut acc = SparseVec::new();
        for (j, c) in v.iter() {
            acc = acc.axpy(field, c, &self.cols[*j]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if other.nrows != self.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows,
                self.ncols(),
                other.nrows,
                other.ncols()
            )));
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(field, c)).collect(),
        })
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.nrows != other.nrows || self.ncols() != other.ncols() {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        Ok(SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(field, b)).collect(),
        })
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().map(|col| col.scale(field, c)).collect() }
    }

    pub fn rows(&self) -> Vec<SparseVec<E>> {
        let mut rows: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        rows.into_iter().map(|entries| SparseVec { entries }).collect()
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix { nrows: self.ncols(), cols: self.rows() }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }
}

/// Exact rank together with kernel and image bases.
#[derive(Clone, Debug)]
pub struct RankDecomposition<E> {
    pub rank: usize,
    /// Basis of the null space, as vectors in the source.
    pub kernel: Vec<SparseVec<E>>,
    /// Basis of the column space, as vectors in the target (original pivot columns).
    pub image: Vec<SparseVec<E>>,
    pub pivot_columns: Vec<usize>,
}

/// Which elimination strategy to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elimination {
    Auto,
    Dense,
    Sparse,
}

pub fn rank_decompose<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> RankDecomposition<F::Elem> {
    rank_decompose_with(field, m, Elimination::Auto)
}

pub fn rank_decompose_with<F: Field>(
    field: &F,
    m: &SparseMatrix<F::Elem>,
    strategy: Elimination,
) -> RankDecomposition<F::Elem> {
    let dense = match strategy {
        Elimination::Auto => m.ncols() < DENSE_COLUMN_LIMIT,
        Elimination::Dense => true,
        Elimination::Sparse => false,
    };
    let (pivots, reduced_rows) = if dense { dense_rref(field, m) } else { sparse_rref(field, m) };
    finish_decomposition(field, m, pivots, reduced_rows)
}

pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    rank_decompose(field, m).rank
}

/// Builds kernel and image bases from a reduced row echelon form given as
/// (pivot column, normalised row) pairs in which every pivot column appears
/// in exactly one row.
fn finish_decomposition<F: Field>(
    field: &F,
    m: &SparseMatrix<F::Elem>,
    pivots: Vec<usize>,
    rows: Vec<SparseVec<F::Elem>>,
) -> RankDecomposition<F::Elem> {
    let ncols = m.ncols();
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut kernel_pairs: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); ncols];
    for (pc, row) in pivots.iter().zip(&rows) {
        for (j, v) in row.iter() {
            if *j != *pc {
                kernel_pairs[*j].push((*pc, field.neg(v)));
            }
        }
    }
    let kernel = (0..ncols)
        .filter(|j| !pivot_set.contains(j))
        .map(|j| {
            let mut pairs = std::mem::take(&mut kernel_pairs[j]);
            pairs.push((j, field.one()));
            SparseVec::from_pairs(field, pairs)
        })
        .collect();
    let mut sorted_pivots = pivots.clone();
    sorted_pivots.sort_unstable();
    let image = sorted_pivots.iter().map(|&j| m.col(j).clone()).collect();
    RankDecomposition { rank: pivots.len(), kernel, image, pivot_columns: sorted_pivots }
}

fn dense_rref<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> (Vec<usize>, Vec<SparseVec<F::Elem>>) {
    let mut a = m.to_dense(field);
    let nrows = a.len();
    let ncols = m.ncols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("nonzero pivot");
        for v in a[r].iter_mut().skip(c) {
            *v = field.mul(v, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows = a.iter().take(r).map(|row| SparseVec::from_dense(field, row)).collect();
    (pivots, rows)
}

/// Gauss–Jordan on sparse rows with a Markowitz-style pivot choice: the
/// sparsest remaining row, and within it the column touched by the fewest
/// remaining rows.
fn sparse_rref<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> (Vec<usize>, Vec<SparseVec<F::Elem>>) {
    let mut rows = m.rows();
    let ncols = m.ncols();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r.iter() {
            col_rows[*j].insert(i);
        }
    }
    let mut active: BTreeSet<usize> = (0..rows.len()).filter(|&i| !rows[i].is_zero()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    while !active.is_empty() {
        let r = *active
            .iter()
            .min_by_key(|&&i| (rows[i].nnz(), i))
            .expect("active nonempty");
        active.remove(&r);
        if rows[r].is_zero() {
            continue;
        }
        let c = rows[r]
            .iter()
            .map(|(j, _)| *j)
            .min_by_key(|&j| (col_rows[j].iter().filter(|i| active.contains(i)).count(), j))
            .expect("nonzero row");
        let inv = field.inv(&rows[r].get(field, c)).expect("nonzero pivot");
        rows[r] = rows[r].scale(field, &inv);
        let pivot_row = rows[r].clone();
        let touched: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        for i in touched {
            let f = rows[i].get(field, c);
            if field.is_zero(&f) {
                continue;
            }
            let old: BTreeSet<usize> = rows[i].iter().map(|(j, _)| *j).collect();
            rows[i] = rows[i].axpy(field, &field.neg(&f), &pivot_row);
            let new: BTreeSet<usize> = rows[i].iter().map(|(j, _)| *j).collect();
            for j in old.difference(&new) {
                col_rows[*j].remove(&i);
            }
            for j in new.difference(&old) {
                col_rows[*j].insert(i);
            }
            if rows[i].is_zero() {
                active.remove(&i);
            }
        }
        pivots.push((c, r));
    }
    let pcols = pivots.iter().map(|(c, _)| *c).collect();
    let prows = pivots.iter().map(|(_, r)| rows[*r].clone()).collect();
    (pcols, prows)
}

/// An incrementally built span of vectors kept in row echelon form, able to
/// express any vector of the span in terms of the inserted generators.
#[derive(Clone, Debug)]
pub struct EchelonSpan<E> {
    dim: usize,
    rows: Vec<EchelonRow<E>>,
    pivot_row: HashMap<usize, usize>,
    generators: usize,
}

#[derive(Clone, Debug)]
struct EchelonRow<E> {
    pivot: usize,
    vec: SparseVec<E>,
    combo: SparseVec<E>,
}

impl<E: Clone + PartialEq> EchelonSpan<E> {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new(), pivot_row: HashMap::new(), generators: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// combination of generators that was subtracted.
    fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> (Vec<E>, SparseVec<E>) {
        let mut acc = v.to_dense(field, self.dim);
        let mut combo = SparseVec::new();
        for c in 0..self.dim {
            if field.is_zero(&acc[c]) {
                continue;
            }
            if let Some(&ri) = self.pivot_row.get(&c) {
                let row = &self.rows[ri];
                let f = acc[c].clone();
                for (j, x) in row.vec.iter() {
                    acc[*j] = field.sub(&acc[*j], &field.mul(&f, x));
                }
                combo = combo.axpy(field, &f, &row.combo);
            }
        }
        (acc, combo)
    }

    /// Inserts a generator. Returns its generator id when it is independent
    /// of what is already stored, `None` otherwise (nothing is stored then).
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &SparseVec<E>) -> Option<usize> {
        let (rem, combo) = self.reduce(field, v);
        let lead = rem.iter().position(|x| !field.is_zero(x))?;
        let inv = field.inv(&rem[lead]).expect("nonzero lead");
        let id = self.generators;
        self.generators += 1;
        let vec = SparseVec::from_dense(field, &rem).scale(field, &inv);
        let combo = SparseVec::unit(field, id).sub(field, &combo).scale(field, &inv);
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(EchelonRow { pivot: lead, vec, combo });
        Some(id)
    }

    /// `v` reduced modulo the span; zero exactly at the pivot coordinates.
    pub fn remainder<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        SparseVec::from_dense(field, &self.reduce(field, v).0)
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        let (rem, _) = self.reduce(field, v);
        rem.iter().all(|x| field.is_zero(x))
    }

    /// Coordinates of `v` with respect to the inserted generators, if `v` is in the span.
    pub fn coords<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> Option<SparseVec<E>> {
        let (rem, combo) = self.reduce(field, v);
        if rem.iter().all(|x| field.is_zero(x)) {
            Some(combo)
        } else {
            None
        }
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn zero_and_identity() {
        let f = q();
        let z: SparseMatrix<_> = SparseMatrix::zeros(3, 4);
        let d = rank_decompose(&f, &z);
        assert_eq!(d.rank, 0);
        assert_eq!(d.kernel.len(), 4);
        let id = SparseMatrix::identity(&f, 5);
        assert_eq!(rank(&f, &id), 5);
        assert!(rank_decompose(&f, &id).kernel.is_empty());
    }

    #[test]
    fn triangle_boundary_rank_two() {
        // edges 01, 12, 02 -> vertices 0,1,2
        let f = q();
        let m = SparseMatrix::from_i64_rows(&f, &[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
        let d = rank_decompose(&f, &m);
        assert_eq!(d.rank, 2);
        assert_eq!(d.kernel.len(), 1);
        assert!(m.apply(&f, &d.kernel[0]).is_zero());
    }

    #[test]
    fn echelon_span_coordinates() {
        let f = q();
        let mut span = EchelonSpan::new(3);
        let a = SparseVec::from_dense(&f, &[f.from_i64(1), f.from_i64(1), f.zero()]);
        let b = SparseVec::from_dense(&f, &[f.zero(), f.from_i64(1), f.from_i64(1)]);
        assert_eq!(span.insert(&f, &a), Some(0));
        assert_eq!(span.insert(&f, &b), Some(1));
        assert_eq!(span.insert(&f, &a.add(&f, &b)), None);
        let target = a.scale(&f, &f.from_i64(2)).sub(&f, &b);
        let c = span.coords(&f, &target).unwrap();
        assert_eq!(c.get(&f, 0), f.from_i64(2));
        assert_eq!(c.get(&f, 1), f.from_i64(-1));
        assert!(span.coords(&f, &SparseVec::unit(&f, 2)).is_some() == false);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..3], c), r)
        })
    }

    proptest! {
        #[test]
        fn dense_and_sparse_agree(rows in arb_matrix()) {
            let f = PrimeField::new(5).unwrap();
            let m = SparseMatrix::from_i64_rows(&f, &rows);
            let d = rank_decompose_with(&f, &m, Elimination::Dense);
            let s = rank_decompose_with(&f, &m, Elimination::Sparse);
            prop_assert_eq!(d.rank, s.rank);
            prop_assert_eq!(d.kernel.len() + d.rank, m.ncols());
            prop_assert_eq!(s.kernel.len() + s.rank, m.ncols());
            for k in d.kernel.iter().chain(s.kernel.iter()) {
                prop_assert!(m.apply(&f, k).is_zero());
            }
            let qf = Rationals;
            let mq = SparseMatrix::from_i64_rows(&qf, &rows);
            let dq = rank_decompose_with(&qf, &mq, Elimination::Dense);
            let sq = rank_decompose_with(&qf, &mq, Elimination::Sparse);
            prop_assert_eq!(dq.rank, sq.rank);
            for k in sq.kernel.iter() {
                prop_assert!(mq.apply(&qf, k).is_zero());
            }
            // image vectors are independent and span the column space
            let mut span = EchelonSpan::new(m.nrows());
            for v in &sq.image { prop_assert!(span.insert(&qf, v).is_some()); }
            for c in mq.columns() { prop_assert!(span.contains(&qf, c)); }
        }
    }
}
