//! Graded complexes, bicomplexes, totalization and homology.

use std::collections::BTreeMap;

use super::field::Field;
use super::linalg::{rank_decompose, EchelonSpan, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Differential raises degree by one.
    Cochain,
    /// Differential lowers degree by one.
    Chain,
}

impl Direction {
    pub fn step(self) -> i64 {
        match self {
            Direction::Cochain => 1,
            Direction::Chain => -1,
        }
    }
}

/// A degreewise finite complex stored on the closed degree range `[lo, hi]`.
/// Degrees outside the range are unknown, not zero.
#[derive(Clone, Debug)]
pub struct GradedComplex<E> {
    direction: Direction,
    lo: i64,
    hi: i64,
    dims: BTreeMap<i64, usize>,
    labels: BTreeMap<i64, Vec<String>>,
    differential: BTreeMap<i64, SparseMatrix<E>>,
}

impl<E: Clone + PartialEq> GradedComplex<E> {
    pub fn new(direction: Direction, lo: i64, hi: i64) -> Self {
        GradedComplex {
            direction,
            lo,
            hi,
            dims: (lo..=hi).map(|n| (n, 0)).collect(),
            labels: BTreeMap::new(),
            differential: BTreeMap::new(),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn set_component(&mut self, degree: i64, dim: usize, labels: Option<Vec<String>>) -> Result<()> {
        if degree < self.lo || degree > self.hi {
            return Err(Error::InsufficientRange(format!("degree {degree} outside [{}, {}]", self.lo, self.hi)));
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(Error::DimensionMismatch(format!("{} labels for dimension {dim}", l.len())));
            }
        }
        self.dims.insert(degree, dim);
        if let Some(l) = labels {
            self.labels.insert(degree, l);
        }
        Ok(())
    }

    /// Sets the differential leaving `degree`.
    pub fn set_differential(&mut self, degree: i64, m: SparseMatrix<E>) -> Result<()> {
        let target = degree + self.direction.step();
        let (ds, dt) = (self.dim(degree)?, self.dim(target)?);
        if m.ncols() != ds || m.nrows() != dt {
            return Err(Error::DimensionMismatch(format!(
                "differential at degree {degree} is {}x{}, expected {dt}x{ds}",
                m.nrows(),
                m.ncols()
            )));
        }
        self.differential.insert(degree, m);
        Ok(())
    }

    pub fn dim(&self, degree: i64) -> Result<usize> {
        self.dims
            .get(&degree)
            .copied()
            .ok_or_else(|| Error::InsufficientRange(format!("degree {degree} not stored")))
    }

    pub fn labels(&self, degree: i64) -> Option<&[String]> {
        self.labels.get(&degree).map(|v| v.as_slice())
    }

    /// The differential leaving `degree`; zero when unset but both ends are stored.
    pub fn differential(&self, degree: i64) -> Result<SparseMatrix<E>> {
        let target = degree + self.direction.step();
        let ds = self.dim(degree)?;
        let dt = self.dim(target)?;
        Ok(self.differential.get(&degree).cloned().unwrap_or_else(|| SparseMatrix::zeros(dt, ds)))
    }

    /// Checks that consecutive differentials compose to zero on the stored range.
    pub fn check_d_squared<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        let step = self.direction.step();
        for n in self.lo..=self.hi {
            let (m, t) = (n + step, n + 2 * step);
            if t < self.lo || t > self.hi || m < self.lo || m > self.hi {
                continue;
            }
            let comp = self.differential(m)?.compose(field, &self.differential(n)?)?;
            if !comp.is_zero() {
                return Err(Error::Malformed(format!("d∘d ≠ 0 starting in degree {n}")));
            }
        }
        Ok(())
    }
}

/// Homology in one degree with a representative basis and a solver that
/// expresses any cycle in that basis.
#[derive(Clone, Debug)]
pub struct HomologyGroup<E> {
    pub degree: i64,
    pub dim: usize,
    /// Representative cycles, as vectors in the component of this degree.
    pub reps: Vec<SparseVec<E>>,
    span: EchelonSpan<E>,
    boundary_count: usize,
    kernel: EchelonSpan<E>,
}

impl<E: Clone + PartialEq> HomologyGroup<E> {
    /// Coordinates of the class of `cycle` in the representative basis.
    pub fn coords<F: Field<Elem = E>>(&self, field: &F, cycle: &SparseVec<E>) -> Result<Vec<E>> {
        let c = self.span.coords(field, cycle).ok_or_else(|| {
            Error::Malformed(format!("vector in degree {} is not a cycle", self.degree))
        })?;
        let mut out = vec![field.zero(); self.dim];
        for (id, v) in c.iter() {
            if *id >= self.boundary_count {
                out[*id - self.boundary_count] = v.clone();
            }
        }
        Ok(out)
    }

    pub fn is_cycle<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.kernel.contains(field, v)
    }

    pub fn is_boundary<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        match self.span.coords(field, v) {
            Some(c) => c.iter().all(|(id, _)| *id < self.boundary_count),
            None => false,
        }
    }

    /// Matrix (columns = images of representatives) of an endomorphism of the
    /// component that maps cycles to cycles.
    pub fn induced_matrix<F: Field<Elem = E>>(
        &self,
        field: &F,
        map: impl Fn(&SparseVec<E>) -> SparseVec<E>,
    ) -> Result<Vec<Vec<E>>> {
        let mut m = vec![vec![field.zero(); self.dim]; self.dim];
        for (j, r) in self.reps.iter().enumerate() {
            let c = self.coords(field, &map(r))?;
            for (i, v) in c.into_iter().enumerate() {
                m[i][j] = v;
            }
        }
        Ok(m)
    }
}

/// Homology of `c` in every degree of `[from, to]`.
pub fn complex_homology<F: Field>(
    field: &F,
    c: &GradedComplex<F::Elem>,
    from: i64,
    to: i64,
) -> Result<Vec<HomologyGroup<F::Elem>>> {
    let step = c.direction.step();
    let (lo, hi) = c.range();
    for n in [from - 1, to + 1] {
        if n < lo || n > hi {
            return Err(Error::InsufficientRange(format!(
                "homology on [{from}, {to}] needs degrees [{}, {}] stored, have [{lo}, {hi}]",
                from - 1,
                to + 1
            )));
        }
    }
    (from..=to)
        .map(|n| {
            let dim = c.dim(n)?;
            let outgoing = c.differential(n)?;
            let incoming = c.differential(n - step)?;
            let ker = rank_decompose(field, &outgoing).kernel;
            let im = rank_decompose(field, &incoming).image;
            let mut span = EchelonSpan::new(dim);
            for b in &im {
                span.insert(field, b);
            }
            let boundary_count = span.rank();
            let mut kernel = EchelonSpan::new(dim);
            let mut reps = Vec::new();
            for z in &ker {
                kernel.insert(field, z);
                if span.insert(field, z).is_some() {
                    reps.push(z.clone());
                }
            }
            Ok(HomologyGroup { degree: n, dim: reps.len(), reps, span, boundary_count, kernel })
        })
        .collect()
}

/// A bicomplex with horizontal `∂: (p,q) → (p-1,q)` and vertical
/// `δ: (p,q) → (p,q+1)`, stored for `p ≤ p_max` and `q ≤ q_max(p)`.
#[derive(Clone, Debug)]
pub struct Bicomplex<E> {
    p_max: usize,
    q_max: Vec<usize>,
    dims: BTreeMap<(usize, usize), usize>,
    horizontal: BTreeMap<(usize, usize), SparseMatrix<E>>,
    vertical: BTreeMap<(usize, usize), SparseMatrix<E>>,
}

impl<E: Clone + PartialEq> Bicomplex<E> {
    pub fn new(q_max: Vec<usize>) -> Result<Self> {
        if q_max.is_empty() {
            return Err(Error::InvalidParameter("bicomplex needs at least one column".into()));
        }
        Ok(Bicomplex {
            p_max: q_max.len() - 1,
            q_max,
            dims: BTreeMap::new(),
            horizontal: BTreeMap::new(),
            vertical: BTreeMap::new(),
        })
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self, p: usize) -> usize {
        self.q_max[p]
    }

    pub fn stored(&self, p: usize, q: usize) -> bool {
        p <= self.p_max && q <= self.q_max[p]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn set_dim(&mut self, p: usize, q: usize, dim: usize) -> Result<()> {
        if !self.stored(p, q) {
            return Err(Error::InsufficientRange(format!("bidegree ({p},{q}) outside stored range")));
        }
        self.dims.insert((p, q), dim);
        Ok(())
    }

    pub fn set_horizontal(&mut self, p: usize, q: usize, m: SparseMatrix<E>) -> Result<()> {
        if p == 0 {
            return Err(Error::InvalidParameter("no horizontal map out of column 0".into()));
        }
        self.check_shape(&m, (p, q), (p - 1, q))?;
        self.horizontal.insert((p, q), m);
        Ok(())
    }

    pub fn set_vertical(&mut self, p: usize, q: usize, m: SparseMatrix<E>) -> Result<()> {
        self.check_shape(&m, (p, q), (p, q + 1))?;
        self.vertical.insert((p, q), m);
        Ok(())
    }

    fn check_shape(&self, m: &SparseMatrix<E>, from: (usize, usize), to: (usize, usize)) -> Result<()> {
        let (ds, dt) = (self.dim(from.0, from.1), self.dim(to.0, to.1));
        if m.ncols() != ds || m.nrows() != dt {
            return Err(Error::DimensionMismatch(format!(
                "map {from:?}→{to:?} is {}x{}, expected {dt}x{ds}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(())
    }

    /// `∂` out of `(p,q)`; zero into the nonexistent column -1.
    pub fn horizontal(&self, p: usize, q: usize) -> SparseMatrix<E> {
        if p == 0 {
            return SparseMatrix::zeros(0, self.dim(0, q));
        }
        self.horizontal
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(p - 1, q), self.dim(p, q)))
    }

    pub fn vertical(&self, p: usize, q: usize) -> SparseMatrix<E> {
        self.vertical
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// Checks ∂∂ = 0, δδ = 0 and ∂δ = δ∂ wherever every map involved is stored.
    pub fn check_invariants<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for p in 0..=self.p_max {
            for q in 0..=self.q_max[p] {
                if p >= 2 && self.stored(p - 1, q) {
                    let dd = self.horizontal(p - 1, q).compose(field, &self.horizontal(p, q))?;
                    if !dd.is_zero() {
                        return Err(Error::Malformed(format!("∂∂ ≠ 0 at ({p},{q})")));
                    }
                }
                if q + 2 <= self.q_max[p] {
                    let dd = self.vertical(p, q + 1).compose(field, &self.vertical(p, q))?;
                    if !dd.is_zero() {
                        return Err(Error::Malformed(format!("δδ ≠ 0 at ({p},{q})")));
                    }
                }
                if p >= 1 && q < self.q_max[p] && self.stored(p - 1, q + 1) {
                    let a = self.horizontal(p, q + 1).compose(field, &self.vertical(p, q))?;
                    let b = self.vertical(p - 1, q).compose(field, &self.horizontal(p, q))?;
                    if a != b {
                        return Err(Error::Malformed(format!("∂δ ≠ δ∂ at ({p},{q})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct-sum totalization along `n = q - p` for total degrees up to
    /// `max_degree + 1`, with `D = δ + (-1)^q ∂` on the `(p,q)` summand.
    pub fn total_complex<F: Field<Elem = E>>(&self, field: &F, max_degree: i64) -> Result<TotalComplex<E>> {
        for p in 0..=self.p_max {
            if (self.q_max[p] as i64) < max_degree + 1 + p as i64 {
                return Err(Error::InsufficientRange(format!(
                    "column {p} stored to q = {}, total degree {} needs q = {}",
                    self.q_max[p],
                    max_degree + 1,
                    max_degree + 1 + p as i64
                )));
            }
        }
        let lo = (0..=self.p_max)
            .flat_map(|p| (0..=self.q_max[p]).map(move |q| (p, q)))
            .filter(|&(p, q)| self.dim(p, q) > 0)
            .map(|(p, q)| q as i64 - p as i64)
            .min()
            .unwrap_or(0)
            .min(0)
            - 1;
        let hi = max_degree + 1;
        let mut layout: BTreeMap<i64, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for n in lo..=hi {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for p in 0..=self.p_max {
                let q = n + p as i64;
                if q < 0 || q as usize > self.q_max[p] {
                    continue;
                }
                let d = self.dim(p, q as usize);
                if d > 0 {
                    blocks.push((p, q as usize, offset));
                    offset += d;
                }
            }
            layout.insert(n, blocks);
        }
        let total_dim = |n: i64| -> usize {
            layout[&n].iter().map(|&(p, q, _)| self.dim(p, q)).sum()
        };
        let mut complex = GradedComplex::new(Direction::Cochain, lo, hi);
        for n in lo..=hi {
            complex.set_component(n, total_dim(n), None)?;
        }
        for n in lo..hi {
            let mut cols = Vec::with_capacity(total_dim(n));
            let target = &layout[&(n + 1)];
            let offset_of = |p: usize, q: usize| target.iter().find(|b| b.0 == p && b.1 == q).map(|b| b.2);
            for &(p, q, _) in &layout[&n] {
                let v = self.vertical(p, q);
                let h = self.horizontal(p, q);
                let sign = field.sign(q % 2 == 1);
                for j in 0..self.dim(p, q) {
                    let mut col = SparseVec::new();
                    if let Some(off) = offset_of(p, q + 1) {
                        col = col.add(field, &v.col(j).shift(off));
                    }
                    if p > 0 {
                        if let Some(off) = offset_of(p - 1, q) {
                            col = col.axpy(field, &sign, &h.col(j).shift(off));
                        }
                    }
                    cols.push(col);
                }
            }
            complex.set_differential(n, SparseMatrix::from_columns(total_dim(n + 1), cols)?)?;
        }
        Ok(TotalComplex { complex, layout })
    }
}

/// A totalized bicomplex, remembering which block of each total degree
/// comes from which bidegree.
#[derive(Clone, Debug)]
pub struct TotalComplex<E> {
    pub complex: GradedComplex<E>,
    /// Per total degree: (p, q, offset) of every nonzero block.
    pub layout: BTreeMap<i64, Vec<(usize, usize, usize)>>,
}

impl<E: Clone + PartialEq> TotalComplex<E> {
    pub fn offset(&self, n: i64, p: usize, q: usize) -> Option<usize> {
        self.layout.get(&n)?.iter().find(|b| b.0 == p && b.1 == q).map(|b| b.2)
    }

    /// Splits a total-degree vector into its bidegree components.
    pub fn split<F: Field<Elem = E>>(
        &self,
        n: i64,
        v: &SparseVec<E>,
        dims: impl Fn(usize, usize) -> usize,
    ) -> Vec<(usize, usize, SparseVec<E>)> {
        self.layout
            .get(&n)
            .map(|blocks| {
                blocks
                    .iter()
                    .map(|&(p, q, off)| (p, q, v.window(off, dims(p, q))))
                    .filter(|(_, _, w)| !w.is_zero())
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Result of normalizing one level of a simplicial vector space.
#[derive(Clone, Debug)]
pub struct QuotientBasis<E> {
    /// Standard basis indices of `S_p` whose classes form a basis of the quotient.
    pub basis: Vec<usize>,
    /// Projection `S_p → S_p / D_p` in that basis.
    pub projection: SparseMatrix<E>,
}

/// Quotient of `S_p` (dimension `dim`) by the sum of the images of the
/// degeneracy maps `s_j: S_{p-1} → S_p`.
pub fn normalize_quotient<F: Field>(
    field: &F,
    dim: usize,
    degeneracies: &[SparseMatrix<F::Elem>],
) -> Result<QuotientBasis<F::Elem>> {
    let mut span = EchelonSpan::new(dim);
    for (j, s) in degeneracies.iter().enumerate() {
        if s.nrows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "degeneracy s_{j} lands in dimension {}, level has dimension {dim}",
                s.nrows()
            )));
        }
        for c in s.columns() {
            span.insert(field, c);
        }
    }
    let pivots: std::collections::BTreeSet<usize> = span.pivots().collect();
    let basis: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let position: BTreeMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut cols = Vec::with_capacity(dim);
    for i in 0..dim {
        let rem = span.remainder(field, &SparseVec::unit(field, i));
        let projected = SparseVec::from_pairs(
            field,
            rem.iter().map(|(j, v)| (position[j], v.clone())),
        );
        cols.push(projected);
    }
    Ok(QuotientBasis { basis: basis.clone(), projection: SparseMatrix::from_columns(basis.len(), cols)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::field::Rationals;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn zero_differential_homology_is_components() {
        let f = q();
        let mut c = GradedComplex::new(Direction::Cochain, -1, 3);
        for (n, d) in [(0, 2), (1, 1), (2, 3)] {
            c.set_component(n, d, None).unwrap();
        }
        let h = complex_homology(&f, &c, 0, 2).unwrap();
        assert_eq!(h.iter().map(|g| g.dim).collect::<Vec<_>>(), vec![2, 1, 3]);
    }

    #[test]
    fn cochains_of_two_simplex_are_acyclic() {
        // C^0 = 3 vertices, C^1 = 3 edges (01, 02, 12), C^2 = one triangle
        let f = q();
        let mut c = GradedComplex::new(Direction::Cochain, -1, 3);
        c.set_component(0, 3, None).unwrap();
        c.set_component(1, 3, None).unwrap();
        c.set_component(2, 1, None).unwrap();
        // δ(v_i)(e) = v_i(∂e); ∂(ab) = b - a
        let d0 = SparseMatrix::from_i64_rows(&f, &[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        // ∂(012) = 12 - 02 + 01
        let d1 = SparseMatrix::from_i64_rows(&f, &[vec![1, -1, 1]]);
        c.set_differential(0, d0).unwrap();
        c.set_differential(1, d1).unwrap();
        c.check_d_squared(&f).unwrap();
        let h = complex_homology(&f, &c, 0, 2).unwrap();
        assert_eq!(h.iter().map(|g| g.dim).collect::<Vec<_>>(), vec![1, 0, 0]);
        // the constant cochain spans H^0
        let ones = SparseVec::from_dense(&f, &[f.one(), f.one(), f.one()]);
        assert_eq!(h[0].coords(&f, &ones).unwrap().len(), 1);
    }

    #[test]
    fn homology_needs_neighbouring_degrees() {
        let c: GradedComplex<num_rational::BigRational> = GradedComplex::new(Direction::Cochain, 0, 2);
        assert!(matches!(complex_homology(&q(), &c, 0, 1), Err(Error::InsufficientRange(_))));
    }

    #[test]
    fn one_column_total_complex_is_the_column() {
        let f = q();
        let mut b = Bicomplex::new(vec![4]).unwrap();
        b.set_dim(0, 0, 1).unwrap();
        b.set_dim(0, 3, 1).unwrap();
        let t = b.total_complex(&f, 3).unwrap();
        let h = complex_homology(&f, &t.complex, 0, 3).unwrap();
        assert_eq!(h.iter().map(|g| g.dim).collect::<Vec<_>>(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn one_row_total_complex_is_row_homology_regraded() {
        // row q = 2: columns 0,1,2 with ∂: k^2 → k^1 → ... ; δ = 0
        let f = q();
        let mut b = Bicomplex::new(vec![5, 6, 7]).unwrap();
        b.set_dim(0, 2, 1).unwrap();
        b.set_dim(1, 2, 2).unwrap();
        b.set_dim(2, 2, 1).unwrap();
        b.set_horizontal(1, 2, SparseMatrix::from_i64_rows(&f, &[vec![1, 1]])).unwrap();
        b.set_horizontal(2, 2, SparseMatrix::from_i64_rows(&f, &[vec![1], vec![-1]])).unwrap();
        b.check_invariants(&f).unwrap();
        let t = b.total_complex(&f, 3).unwrap();
        t.complex.check_d_squared(&f).unwrap();
        // row homology: H_0 = 0, H_1 = 0, H_2 = 0 -> everything acyclic
        let h = complex_homology(&f, &t.complex, 0, 3).unwrap();
        assert!(h.iter().all(|g| g.dim == 0));
    }

    #[test]
    fn quotient_by_nothing_and_by_everything() {
        let f = q();
        let none = normalize_quotient(&f, 3, &[SparseMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(none.basis, vec![0, 1, 2]);
        let all = normalize_quotient(&f, 2, &[SparseMatrix::identity(&f, 2)]).unwrap();
        assert!(all.basis.is_empty());
        assert!(normalize_quotient(&f, 3, &[SparseMatrix::zeros(2, 2)]).is_err());
    }
}
