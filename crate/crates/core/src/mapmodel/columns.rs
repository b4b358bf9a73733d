//! The normalized columns `N_p` of the cochain model, for both backends.

use std::collections::HashMap;

use super::algebra::{AlgebraBasis, FreeGCAlgebra};
use super::coeff::{CoefficientKind, CoefficientModel};
use super::levels::{degeneracy_map, face_map, LevelIndex};
use crate::chains::{normalize_quotient, shuffles, Bicomplex, Field, QuotientBasis, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::sset::{product_many, CellId, FiniteSimplicialSet, ProductSet, SimplexRef, SimplicialMap};

/// A basis tensor: (factor position, monomial index) with nonunit monomials,
/// sorted by position.
pub type Tensor = Vec<(u32, u32)>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColumnOptions {
    /// Model based maps: drop the basepoint simplex from every level.
    pub pointed: bool,
    /// Use the reversed canonical order of each level for the tensor factors.
    pub reversed: bool,
}

/// Columns `N_p` in internal degrees `q ≤ q_max(p)`, with the face maps,
/// the internal differential and the product.
#[derive(Clone, Debug)]
pub struct NormalizedColumns<F: Field> {
    field: F,
    k: FiniteSimplicialSet,
    levels: Vec<LevelIndex>,
    q_max: Vec<usize>,
    backend: Columns<F::Elem>,
    dims: Vec<Vec<usize>>,
    /// `[p][q][i]`: `d_i: N_p^q → N_{p-1}^q`.
    faces: Vec<Vec<Vec<SparseMatrix<F::Elem>>>>,
    /// `[p][q]`: `δ: N_p^q → N_p^{q+1}` for `q < q_max(p)`.
    vertical: Vec<Vec<SparseMatrix<F::Elem>>>,
}

#[derive(Clone, Debug)]
enum Columns<E> {
    Tensor(TensorColumns<E>),
    Simplicial(SimplicialColumns<E>),
}

#[derive(Clone, Debug)]
struct TensorColumns<E> {
    algebra: FreeGCAlgebra,
    basis: AlgebraBasis<E>,
    tensors: Vec<Vec<Vec<Tensor>>>,
    index: Vec<Vec<HashMap<Tensor, usize>>>,
}

/// `L^m` with its coordinates; `m = 0` is a point.
#[derive(Clone, Debug)]
struct Power {
    m: usize,
    prod: ProductSet,
}

#[derive(Clone, Debug)]
struct SimplicialColumns<E> {
    vertex: CellId,
    l: FiniteSimplicialSet,
    powers: Vec<Power>,
    power_of: Vec<usize>,
    quotients: Vec<Vec<QuotientBasis<E>>>,
}

pub fn build_columns<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    coeff: &CoefficientModel,
    q_max: &[usize],
    options: ColumnOptions,
) -> Result<NormalizedColumns<F>> {
    if field.spec() != coeff.field {
        return Err(Error::InvalidParameter(format!(
            "coefficients are over {} but the computation is over {}",
            coeff.field,
            field.spec()
        )));
    }
    if q_max.is_empty() || q_max.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("q_max must be nonempty and nondecreasing".into()));
    }
    if options.pointed {
        let bp = k
            .basepoint()
            .ok_or_else(|| Error::Hypothesis(format!("`{}` has no basepoint", k.name())))?;
        if k.cells_of_dim(0) != [bp] {
            return Err(Error::Hypothesis(format!(
                "pointed mapping spaces need a reduced source, `{}` has {} vertices",
                k.name(),
                k.cells_of_dim(0).len()
            )));
        }
    }
    let p_max = q_max.len() - 1;
    let levels = (0..=p_max)
        .map(|p| LevelIndex::new(k, p, options.reversed, options.pointed))
        .collect::<Result<Vec<_>>>()?;
    let mut cols = NormalizedColumns {
        field: field.clone(),
        k: k.clone(),
        levels,
        q_max: q_max.to_vec(),
        backend: match &coeff.kind {
            CoefficientKind::Tensor(a) => Columns::Tensor(TensorColumns {
                algebra: a.clone(),
                basis: AlgebraBasis::new(field, a, q_max[p_max])?,
                tensors: Vec::new(),
                index: Vec::new(),
            }),
            CoefficientKind::Simplicial(l) => Columns::Simplicial(SimplicialColumns {
                vertex: l.cells_of_dim(0)[0],
                l: l.clone(),
                powers: Vec::new(),
                power_of: Vec::new(),
                quotients: Vec::new(),
            }),
        },
        dims: Vec::new(),
        faces: Vec::new(),
        vertical: Vec::new(),
    };
    match cols.backend {
        Columns::Tensor(_) => cols.build_tensor()?,
        Columns::Simplicial(_) => cols.build_simplicial()?,
    }
    Ok(cols)
}

/// Collects factors by target position: stable sort with the Koszul sign of
/// the odd transpositions, then multiplies factors landing on one position.
fn collect(basis: &AlgebraBasis<impl Clone + PartialEq>, a: &FreeGCAlgebra, items: &[(usize, u32)]) -> Option<(bool, Tensor)> {
    let mut sign = false;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i].0 > items[j].0 && basis.degrees[items[i].1 as usize] % 2 == 1 && basis.degrees[items[j].1 as usize] % 2 == 1 {
                sign = !sign;
            }
        }
    }
    let mut sorted: Vec<(usize, u32)> = items.to_vec();
    sorted.sort_by_key(|x| x.0);
    let mut out: Tensor = Vec::with_capacity(sorted.len());
    for (t, m) in sorted {
        match out.last_mut() {
            Some(last) if last.0 as usize == t => {
                let (neg, prod) = basis.mul(a, last.1, m)?;
                sign ^= neg;
                last.1 = prod;
            }
            _ => out.push((t as u32, m)),
        }
    }
    Some((sign, out))
}

impl Power {
    fn new(l: &FiniteSimplicialSet, m: usize, bound: usize) -> Result<Self> {
        let prod = if m == 0 {
            product_many(&[l.clone()], 0)?
        } else {
            product_many(&vec![l.clone(); m], bound)?
        };
        Ok(Power { m, prod })
    }

    fn set(&self) -> &FiniteSimplicialSet {
        &self.prod.set
    }

    fn cells(&self, q: usize) -> &[CellId] {
        if self.m == 0 && q > 0 {
            return &[];
        }
        let set = self.set();
        if q > set.dim() {
            &[]
        } else {
            set.cells_of_dim(q)
        }
    }

    fn coords(&self, s: &SimplexRef) -> Vec<SimplexRef> {
        if self.m == 0 {
            Vec::new()
        } else {
            self.prod.coordinates(s)
        }
    }

    fn normalize(&self, tuple: &[SimplexRef], level: usize) -> Result<SimplexRef> {
        if self.m == 0 {
            Ok(self.set().degenerate_vertex(self.set().cells_of_dim(0)[0], level))
        } else {
            self.prod.normalize(tuple)
        }
    }
}

impl<F: Field> NormalizedColumns<F> {
    pub fn p_max(&self) -> usize {
        self.q_max.len() - 1
    }

    pub fn q_max(&self, p: usize) -> usize {
        self.q_max[p]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        if p < self.dims.len() && q < self.dims[p].len() {
            self.dims[p][q]
        } else {
            0
        }
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        &self.k
    }

    pub fn level(&self, p: usize) -> &LevelIndex {
        &self.levels[p]
    }

    pub fn face(&self, p: usize, q: usize, i: usize) -> &SparseMatrix<F::Elem> {
        &self.faces[p][q][i]
    }

    /// `∂ = Σ (-1)^i d_i` out of `(p,q)`.
    pub fn horizontal(&self, p: usize, q: usize) -> Result<SparseMatrix<F::Elem>> {
        let f = &self.field;
        let mut acc = SparseMatrix::zeros(self.dim(p - 1, q), self.dim(p, q));
        for (i, m) in self.faces[p][q].iter().enumerate() {
            acc = acc.add(f, &m.scale(f, &f.sign(i % 2 == 1)))?;
        }
        Ok(acc)
    }

    pub fn vertical(&self, p: usize, q: usize) -> &SparseMatrix<F::Elem> {
        &self.vertical[p][q]
    }

    /// A readable label of a basis element.
    pub fn label(&self, p: usize, q: usize, a: usize) -> String {
        match &self.backend {
            Columns::Tensor(t) => {
                let parts: Vec<String> = t.tensors[p][q][a]
                    .iter()
                    .map(|&(pos, m)| {
                        format!(
                            "{}@{}",
                            t.algebra.render_monomial(&t.basis.monomials[m as usize]),
                            self.k.display_simplex(&self.levels[p].simplices[pos as usize])
                        )
                    })
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("⊗")
                }
            }
            Columns::Simplicial(s) => {
                let pw = &s.powers[s.power_of[p]];
                let cell = pw.cells(q)[s.quotients[p][q].basis[a]];
                format!("{}*", pw.set().cell(cell).name)
            }
        }
    }

    /// Assembles the bicomplex with `∂ = Σ(-1)^i d_i` and the internal `δ`.
    pub fn bicomplex(&self) -> Result<Bicomplex<F::Elem>> {
        let mut b = Bicomplex::new(self.q_max.clone())?;
        for p in 0..=self.p_max() {
            for q in 0..=self.q_max[p] {
                b.set_dim(p, q, self.dim(p, q))?;
            }
        }
        for p in 0..=self.p_max() {
            for q in 0..=self.q_max[p] {
                if p > 0 && q <= self.q_max[p - 1] {
                    b.set_horizontal(p, q, self.horizontal(p, q)?)?;
                }
                if q < self.q_max[p] {
                    b.set_vertical(p, q, self.vertical[p][q].clone())?;
                }
            }
        }
        Ok(b)
    }

    /// Cosimplicial identities of the face maps: `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn check_face_identities(&self) -> Result<()> {
        let f = &self.field;
        for p in 2..=self.p_max() {
            for q in 0..=self.q_max[p - 2] {
                for j in 0..=p {
                    for i in 0..j {
                        let a = self.faces[p - 1][q][i].compose(f, &self.faces[p][q][j])?;
                        let b = self.faces[p - 1][q][j - 1].compose(f, &self.faces[p][q][i])?;
                        if a != b {
                            return Err(Error::Malformed(format!(
                                "d_{i} d_{j} ≠ d_{} d_{i} on N_{p}^{q}",
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn build_tensor(&mut self) -> Result<()> {
        let p_max = self.p_max();
        let Columns::Tensor(t) = &mut self.backend else { unreachable!() };
        for p in 0..=p_max {
            let lev = &self.levels[p];
            let top = self.q_max[p];
            let mut buckets: Vec<Vec<Tensor>> = vec![Vec::new(); top + 1];
            let m = lev.len();
            let mut suffix = vec![0u64; m + 1];
            for i in (0..m).rev() {
                suffix[i] = suffix[i + 1] | lev.covers[i];
            }
            let full = super::levels::full_mask(p);
            enumerate_tensors(&t.basis, lev, &suffix, full, top, 0, 0, 0, &mut Vec::new(), &mut buckets);
            let index = buckets
                .iter()
                .map(|b| b.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
                .collect();
            self.dims.push(buckets.iter().map(|b| b.len()).collect());
            t.tensors.push(buckets);
            t.index.push(index);
        }
        let f = &self.field;
        let t = match &self.backend {
            Columns::Tensor(t) => t,
            _ => unreachable!(),
        };
        for p in 0..=p_max {
            let mut per_q = Vec::new();
            for q in 0..=self.q_max[p] {
                let mut per_i = Vec::new();
                if p > 0 {
                    let rows = if q <= self.q_max[p - 1] { self.dims[p - 1][q] } else { 0 };
                    for i in 0..=p {
                        let fm = face_map(&self.k, &self.levels[p], &self.levels[p - 1], i);
                        let mut cols = Vec::with_capacity(self.dims[p][q]);
                        for x in &t.tensors[p][q] {
                            let mut col = SparseVec::new();
                            if rows > 0 {
                                let items: Option<Vec<(usize, u32)>> =
                                    x.iter().map(|&(a, mono)| fm[a as usize].map(|b| (b, mono))).collect();
                                if let Some((neg, y)) = items.and_then(|it| collect(&t.basis, &t.algebra, &it)) {
                                    if let Some(&j) = t.index[p - 1][q].get(&y) {
                                        col = SparseVec::from_pairs(f, [(j, f.sign(neg))]);
                                    }
                                }
                            }
                            cols.push(col);
                        }
                        per_i.push(SparseMatrix::from_columns(rows, cols)?);
                    }
                }
                per_q.push(per_i);
            }
            self.faces.push(per_q);
            let mut vert = Vec::new();
            for q in 0..self.q_max[p] {
                let mut cols = Vec::with_capacity(self.dims[p][q]);
                for x in &t.tensors[p][q] {
                    let mut pairs = Vec::new();
                    let mut prefix = 0usize;
                    for (k, &(_, mono)) in x.iter().enumerate() {
                        for (c, m2) in &t.basis.d[mono as usize] {
                            let mut y = x.clone();
                            y[k].1 = *m2;
                            let j = *t.index[p][q + 1].get(&y).ok_or_else(|| {
                                Error::Malformed("internal differential left the admissible basis".into())
                            })?;
                            let v = if prefix % 2 == 1 { f.neg(c) } else { c.clone() };
                            pairs.push((j, v));
                        }
                        prefix += t.basis.degrees[mono as usize];
                    }
                    cols.push(SparseVec::from_pairs(f, pairs));
                }
                vert.push(SparseMatrix::from_columns(self.dims[p][q + 1], cols)?);
            }
            self.vertical.push(vert);
        }
        Ok(())
    }

    fn build_simplicial(&mut self) -> Result<()> {
        let p_max = self.p_max();
        let f = self.field.clone();
        let Columns::Simplicial(s) = &mut self.backend else { unreachable!() };
        let bound = self.q_max[p_max];
        let mut by_m: HashMap<usize, usize> = HashMap::new();
        for p in 0..=p_max {
            let m = self.levels[p].len();
            let id = match by_m.get(&m) {
                Some(&id) => id,
                None => {
                    s.powers.push(Power::new(&s.l, m, bound)?);
                    by_m.insert(m, s.powers.len() - 1);
                    s.powers.len() - 1
                }
            };
            s.power_of.push(id);
        }
        // normalization by the pullbacks along the degeneracy projections
        for p in 0..=p_max {
            let pw = &s.powers[s.power_of[p]];
            let mut per_q = Vec::new();
            for q in 0..=self.q_max[p] {
                let n = pw.cells(q).len();
                let mut mats = Vec::new();
                if p > 0 {
                    let lower = &s.powers[s.power_of[p - 1]];
                    let nl = lower.cells(q).len();
                    for j in 0..p {
                        let sm = degeneracy_map(&self.k, &self.levels[p - 1], &self.levels[p], &[j]);
                        let mut cols = vec![Vec::new(); nl];
                        for (pos, &cell) in pw.cells(q).iter().enumerate() {
                            let c = pw.coords(&SimplexRef::cell(cell));
                            let sel: Vec<SimplexRef> = sm.iter().map(|&a| c[a].clone()).collect();
                            let img = lower.normalize(&sel, q)?;
                            if !img.is_degenerate() {
                                cols[lower.set().dim_position(img.cell)].push((pos, f.one()));
                            }
                        }
                        let cols = cols.into_iter().map(|c| SparseVec::from_pairs(&f, c)).collect();
                        mats.push(SparseMatrix::from_columns(n, cols)?);
                    }
                }
                per_q.push(normalize_quotient(&f, n, &mats)?);
            }
            self.dims.push(per_q.iter().map(|qb| qb.basis.len()).collect());
            s.quotients.push(per_q);
        }
        let s = match &self.backend {
            Columns::Simplicial(s) => s,
            _ => unreachable!(),
        };
        for p in 0..=p_max {
            let pw = &s.powers[s.power_of[p]];
            let mut per_q = Vec::new();
            for q in 0..=self.q_max[p] {
                let mut per_i = Vec::new();
                if p > 0 {
                    let lower = &s.powers[s.power_of[p - 1]];
                    let stored = q <= self.q_max[p - 1];
                    let rows = if stored { self.dims[p - 1][q] } else { 0 };
                    for i in 0..=p {
                        let mut cols = vec![SparseVec::new(); self.dims[p][q]];
                        if stored {
                            let fm = face_map(&self.k, &self.levels[p], &self.levels[p - 1], i);
                            // Δ_i^* e_σ = Σ_{τ : Δ_i τ = σ} e_τ
                            let mut pre: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
                            for (tpos, &cell) in lower.cells(q).iter().enumerate() {
                                let c = lower.coords(&SimplexRef::cell(cell));
                                let tuple: Vec<SimplexRef> = fm
                                    .iter()
                                    .map(|b| match b {
                                        Some(b) => c[*b].clone(),
                                        None => s.l.degenerate_vertex(s.vertex, q),
                                    })
                                    .collect();
                                let img = pw.normalize(&tuple, q)?;
                                if !img.is_degenerate() {
                                    pre.entry(pw.set().dim_position(img.cell)).or_default().push((tpos, f.one()));
                                }
                            }
                            for (a, &spos) in s.quotients[p][q].basis.iter().enumerate() {
                                if let Some(v) = pre.remove(&spos) {
                                    let v = SparseVec::from_pairs(&f, v);
                                    cols[a] = s.quotients[p - 1][q].projection.apply(&f, &v);
                                }
                            }
                        }
                        per_i.push(SparseMatrix::from_columns(rows, cols)?);
                    }
                }
                per_q.push(per_i);
            }
            self.faces.push(per_q);
            let mut vert = Vec::new();
            for q in 0..self.q_max[p] {
                let mut cob: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
                for (rpos, &cell) in pw.cells(q + 1).iter().enumerate() {
                    let rho = SimplexRef::cell(cell);
                    for i in 0..=q + 1 {
                        let fc = pw.set().face(i, &rho);
                        if !fc.is_degenerate() {
                            cob.entry(pw.set().dim_position(fc.cell)).or_default().push((rpos, f.sign(i % 2 == 1)));
                        }
                    }
                }
                let cols = s.quotients[p][q]
                    .basis
                    .iter()
                    .map(|spos| {
                        let v = SparseVec::from_pairs(&f, cob.get(spos).cloned().unwrap_or_default());
                        s.quotients[p][q + 1].projection.apply(&f, &v)
                    })
                    .collect();
                vert.push(SparseMatrix::from_columns(self.dims[p][q + 1], cols)?);
            }
            self.vertical.push(vert);
        }
        Ok(())
    }

    /// The product of `x ∈ N_p^r` and `y ∈ N_q^s`:
    /// `(-1)^{p·s} Σ_{(μ,ν)} sgn(μ,ν) (s_ν x)·(s_μ y)` in `N_{p+q}^{r+s}`.
    pub fn block_product(
        &self,
        (p, r, x): (usize, usize, &SparseVec<F::Elem>),
        (q, s, y): (usize, usize, &SparseVec<F::Elem>),
    ) -> Result<SparseVec<F::Elem>> {
        let f = &self.field;
        if p + q > self.p_max() || r + s > self.q_max[p + q] {
            return Err(Error::InsufficientRange(format!(
                "product lands in ({}, {}) outside the stored columns",
                p + q,
                r + s
            )));
        }
        if r > self.q_max[p] || s > self.q_max[q] {
            return Err(Error::InsufficientRange(format!("factor bidegree ({p},{r}) or ({q},{s}) not stored")));
        }
        if x.is_zero() || y.is_zero() {
            return Ok(SparseVec::new());
        }
        let outer = (p * s) % 2 == 1;
        let target = &self.levels[p + q];
        let mut acc: HashMap<usize, F::Elem> = HashMap::new();
        let mut add = |j: usize, v: F::Elem| {
            let e = acc.entry(j).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        };
        for sh in shuffles(p, q) {
            let nu = degeneracy_map(&self.k, &self.levels[p], target, &sh.nu);
            let mu = degeneracy_map(&self.k, &self.levels[q], target, &sh.mu);
            let sign = f.sign(sh.odd ^ outer);
            match &self.backend {
                Columns::Tensor(t) => {
                    for (a, xa) in x.iter() {
                        let ta = &t.tensors[p][r][*a];
                        for (b, yb) in y.iter() {
                            let tb = &t.tensors[q][s][*b];
                            let items: Vec<(usize, u32)> = ta
                                .iter()
                                .map(|&(i, m)| (nu[i as usize], m))
                                .chain(tb.iter().map(|&(i, m)| (mu[i as usize], m)))
                                .collect();
                            let Some((neg, z)) = collect(&t.basis, &t.algebra, &items) else { continue };
                            if let Some(&j) = t.index[p + q][r + s].get(&z) {
                                let c = f.mul(&f.mul(xa, yb), &sign);
                                add(j, if neg { f.neg(&c) } else { c });
                            }
                        }
                    }
                }
                Columns::Simplicial(sc) => {
                    let lift = |pp: usize, qq: usize, v: &SparseVec<F::Elem>| -> HashMap<usize, F::Elem> {
                        v.iter().map(|(a, c)| (sc.quotients[pp][qq].basis[*a], c.clone())).collect()
                    };
                    let xl = lift(p, r, x);
                    let yl = lift(q, s, y);
                    let pw = &sc.powers[sc.power_of[p + q]];
                    let (px, py) = (&sc.powers[sc.power_of[p]], &sc.powers[sc.power_of[q]]);
                    let front: Vec<usize> = (0..=r).collect();
                    let back: Vec<usize> = (r..=r + s).collect();
                    let mut std: Vec<(usize, F::Elem)> = Vec::new();
                    for (pos, &cell) in pw.cells(r + s).iter().enumerate() {
                        let rho = SimplexRef::cell(cell);
                        let fr = pw.set().apply_unchecked(&front, &rho);
                        let fc = pw.coords(&fr);
                        let sel: Vec<SimplexRef> = nu.iter().map(|&i| fc[i].clone()).collect();
                        let u = px.normalize(&sel, r)?;
                        if u.is_degenerate() {
                            continue;
                        }
                        let Some(xu) = xl.get(&px.set().dim_position(u.cell)) else { continue };
                        let bk = pw.set().apply_unchecked(&back, &rho);
                        let bc = pw.coords(&bk);
                        let sel: Vec<SimplexRef> = mu.iter().map(|&i| bc[i].clone()).collect();
                        let v = py.normalize(&sel, s)?;
                        if v.is_degenerate() {
                            continue;
                        }
                        let Some(yv) = yl.get(&py.set().dim_position(v.cell)) else { continue };
                        std.push((pos, f.mul(&f.mul(xu, yv), &sign)));
                    }
                    let projected = sc.quotients[p + q][r + s].projection.apply(f, &SparseVec::from_pairs(f, std));
                    for (j, v) in projected.iter() {
                        add(*j, v.clone());
                    }
                }
            }
        }
        Ok(SparseVec::from_pairs(f, acc))
    }

    /// The unit `1 ∈ N_0^0`.
    pub fn unit(&self) -> SparseVec<F::Elem> {
        let f = &self.field;
        match &self.backend {
            Columns::Tensor(t) => SparseVec::unit(f, t.index[0][0][&Vec::new()]),
            Columns::Simplicial(s) => {
                // the constant cochain on the vertices of L^{m_0}
                let pw = &s.powers[s.power_of[0]];
                let v = SparseVec::from_pairs(f, (0..pw.cells(0).len()).map(|i| (i, f.one())));
                s.quotients[0][0].projection.apply(f, &v)
            }
        }
    }

    /// Matrices of a simplicial automorphism of `K` on every stored `(p,q)`.
    pub fn action_matrices(&self, g: &SimplicialMap) -> Result<Vec<Vec<SparseMatrix<F::Elem>>>> {
        let f = &self.field;
        if g.source() != &self.k || g.target() != &self.k {
            return Err(Error::InvalidParameter("action map is not an endomorphism of the source".into()));
        }
        let mut out = Vec::new();
        for p in 0..=self.p_max() {
            let lev = &self.levels[p];
            let perm: Vec<usize> = lev
                .simplices
                .iter()
                .map(|s| {
                    lev.position(&g.apply(s))
                        .ok_or_else(|| Error::Hypothesis("the action moves the basepoint".into()))
                })
                .collect::<Result<_>>()?;
            let mut per_q = Vec::new();
            for q in 0..=self.q_max[p] {
                let mut cols = Vec::with_capacity(self.dim(p, q));
                match &self.backend {
                    Columns::Tensor(t) => {
                        for x in &t.tensors[p][q] {
                            let items: Vec<(usize, u32)> = x.iter().map(|&(a, m)| (perm[a as usize], m)).collect();
                            let (neg, y) = collect(&t.basis, &t.algebra, &items)
                                .ok_or_else(|| Error::Malformed("action map is not injective on a level".into()))?;
                            let j = *t.index[p][q]
                                .get(&y)
                                .ok_or_else(|| Error::Malformed("action does not preserve admissible supports".into()))?;
                            cols.push(SparseVec::from_pairs(f, [(j, f.sign(neg))]));
                        }
                    }
                    Columns::Simplicial(s) => {
                        let pw = &s.powers[s.power_of[p]];
                        for &spos in &s.quotients[p][q].basis {
                            let cell = pw.cells(q)[spos];
                            let c = pw.coords(&SimplexRef::cell(cell));
                            let mut tuple = c.clone();
                            for (a, x) in c.into_iter().enumerate() {
                                tuple[perm[a]] = x;
                            }
                            let img = pw.normalize(&tuple, q)?;
                            let v = SparseVec::unit(f, pw.set().dim_position(img.cell));
                            cols.push(s.quotients[p][q].projection.apply(f, &v));
                        }
                    }
                }
                per_q.push(SparseMatrix::from_columns(self.dim(p, q), cols)?);
            }
            out.push(per_q);
        }
        Ok(out)
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_tensors<E: Clone + PartialEq>(
    basis: &AlgebraBasis<E>,
    lev: &LevelIndex,
    suffix: &[u64],
    full: u64,
    top: usize,
    pos: usize,
    cover: u64,
    deg: usize,
    cur: &mut Tensor,
    out: &mut [Vec<Tensor>],
) {
    if (cover | suffix[pos]) != full {
        return;
    }
    if pos == lev.len() {
        out[deg].push(cur.clone());
        return;
    }
    enumerate_tensors(basis, lev, suffix, full, top, pos + 1, cover, deg, cur, out);
    for m in 1..basis.len() {
        let d = basis.degrees[m];
        if deg + d > top {
            break;
        }
        cur.push((pos as u32, m as u32));
        enumerate_tensors(basis, lev, suffix, full, top, pos + 1, cover | lev.covers[pos], deg + d, cur, out);
        cur.pop();
    }
}

/// Dimensions of `N_p^q` computed by linear algebra: the full tensor power at
/// level `p` modulo the images of the degeneracies. Cross-checks the
/// admissible-support basis.
pub fn linear_normalized_dim<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    a: &FreeGCAlgebra,
    p: usize,
    q: usize,
) -> Result<usize> {
    let basis = AlgebraBasis::new(field, a, q)?;
    let all = |lev: &LevelIndex| -> Vec<Tensor> {
        let mut buckets = vec![Vec::new(); q + 1];
        // every support allowed
        let suffix = vec![u64::MAX; lev.len() + 1];
        enumerate_tensors(&basis, lev, &suffix, u64::MAX, q, 0, 0, 0, &mut Vec::new(), &mut buckets);
        buckets.swap_remove(q)
    };
    let upper = LevelIndex::new(k, p, false, false)?;
    let top = all(&upper);
    let index: HashMap<Tensor, usize> = top.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut mats = Vec::new();
    if p > 0 {
        let lower = LevelIndex::new(k, p - 1, false, false)?;
        let low = all(&lower);
        for j in 0..p {
            let sm = degeneracy_map(k, &lower, &upper, &[j]);
            let cols = low
                .iter()
                .map(|t| {
                    let items: Vec<(usize, u32)> = t.iter().map(|&(i, m)| (sm[i as usize], m)).collect();
                    let (neg, y) = collect(&basis, a, &items).expect("injective map");
                    SparseVec::from_pairs(field, [(index[&y], field.sign(neg))])
                })
                .collect();
            mats.push(SparseMatrix::from_columns(top.len(), cols)?);
        }
    }
    Ok(normalize_quotient(field, top.len(), &mats)?.basis.len())
}
