//! Finite simplicial sets with simplices kept in Eilenberg–Zilber normal form.
//!
//! A simplex is a nondegenerate cell together with a strictly decreasing
//! degeneracy word `s_{j_k} ⋯ s_{j_1}`. Internally the word is handled as the
//! monotone surjection `[n] → [dim cell]` whose collapsed positions are
//! exactly the indices of the word, which makes composition with arbitrary
//! monotone maps a matter of composing functions.

mod action;
mod build;
mod homology;
mod product;

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

pub use action::{
    polygon_rotation, validate_action, wedge_cycle, zigzag_reflection, ActionReport, SimplicialGroupAction, SimplicialMap,
};
pub use build::{build_standard, BuildKind};
pub use homology::{
    bockstein, homology, integral_homology, normalized_chain_complex, HomologyReport, IntegralHomology,
};
pub use product::{
    disjoint_union, product, product_many, pushout, quotient, smash, switch_action, wedge, ProductSet, Pushout, SmashSet,
};

pub type CellId = usize;

/// A simplex in normal form: `s_{degens[0]} ⋯ s_{degens[k-1]} cell` with
/// `degens` strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub cell: CellId,
    pub degens: Vec<usize>,
}

impl SimplexRef {
    pub fn cell(cell: CellId) -> Self {
        SimplexRef { cell, degens: Vec::new() }
    }

    pub fn new(cell: CellId, mut degens: Vec<usize>) -> Self {
        degens.sort_unstable_by(|a, b| b.cmp(a));
        SimplexRef { cell, degens }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degens.is_empty()
    }

    /// The surjection `[level] → [cell_dim]` encoded by the degeneracy word.
    pub fn surjection(&self, level: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(level + 1);
        let mut v = 0;
        out.push(0);
        for t in 0..level {
            if !self.degens.contains(&t) {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// Normal form of `K(ψ)(cell)` for a monotone surjection `ψ`.
    pub fn from_surjection(cell: CellId, psi: &[usize]) -> Self {
        let degens = (0..psi.len().saturating_sub(1))
            .rev()
            .filter(|&t| psi[t] == psi[t + 1])
            .collect();
        SimplexRef { cell, degens }
    }
}

/// A nondegenerate cell: its dimension and its faces `d_0 .. d_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<SimplexRef>,
}

/// A simplicial set with finitely many nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct FiniteSimplicialSet {
    name: String,
    cells: Vec<Cell>,
    by_dim: Vec<Vec<CellId>>,
    basepoint: Option<CellId>,
    index: HashMap<String, CellId>,
    position: Vec<usize>,
}

impl PartialEq for FiniteSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.basepoint == other.basepoint
    }
}

impl FiniteSimplicialSet {
    /// Builds and validates a simplicial set. Faces refer to cells by index.
    pub fn new(name: impl Into<String>, cells: Vec<Cell>, basepoint: Option<CellId>) -> Result<Self> {
        let name = name.into();
        let dim = cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); if cells.is_empty() { 0 } else { dim + 1 }];
        let mut index = HashMap::new();
        let mut position = Vec::with_capacity(cells.len());
        for (id, c) in cells.iter().enumerate() {
            position.push(by_dim[c.dim].len());
            by_dim[c.dim].push(id);
            if index.insert(c.name.clone(), id).is_some() {
                return Err(Error::Malformed(format!("duplicate cell id `{}` in {name}", c.name)));
            }
        }
        let k = FiniteSimplicialSet { name, cells, by_dim, basepoint, index, position };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<()> {
        if let Some(b) = self.basepoint {
            if b >= self.cells.len() || self.cells[b].dim != 0 {
                return Err(Error::Malformed(format!("basepoint of {} is not a 0-cell", self.name)));
            }
        }
        for c in &self.cells {
            let expected = if c.dim == 0 { 0 } else { c.dim + 1 };
            if c.faces.len() != expected {
                return Err(Error::Malformed(format!(
                    "cell `{}` of dimension {} has {} faces",
                    c.name,
                    c.dim,
                    c.faces.len()
                )));
            }
            for (i, f) in c.faces.iter().enumerate() {
                if f.cell >= self.cells.len() {
                    return Err(Error::Malformed(format!("face d_{i} of `{}` refers to a missing cell", c.name)));
                }
                if !f.degens.windows(2).all(|w| w[0] > w[1]) {
                    return Err(Error::Malformed(format!(
                        "face d_{i} of `{}` has a degeneracy word that is not strictly decreasing",
                        c.name
                    )));
                }
                if self.cells[f.cell].dim + f.degens.len() != c.dim - 1 {
                    return Err(Error::Malformed(format!(
                        "face d_{i} of `{}` has dimension {} instead of {}",
                        c.name,
                        self.cells[f.cell].dim + f.degens.len(),
                        c.dim - 1
                    )));
                }
                if f.degens.iter().any(|&j| j >= c.dim - 1) {
                    return Err(Error::Malformed(format!(
                        "face d_{i} of `{}` uses a degeneracy index out of range",
                        c.name
                    )));
                }
            }
        }
        self.check_simplicial_identities()
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every cell.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        for (id, c) in self.cells.iter().enumerate() {
            if c.dim < 2 {
                continue;
            }
            let s = SimplexRef::cell(id);
            for j in 1..=c.dim {
                for i in 0..j {
                    let a = self.face(i, &self.face(j, &s));
                    let b = self.face(j - 1, &self.face(i, &s));
                    if a != b {
                        return Err(Error::Malformed(format!(
                            "d_{i} d_{j} ≠ d_{} d_{i} on cell `{}` of {}",
                            j - 1,
                            c.name,
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Largest dimension of a nondegenerate cell (0 for the empty set).
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_dim(&self, id: CellId) -> usize {
        self.cells[id].dim
    }

    pub fn cells_of_dim(&self, n: usize) -> &[CellId] {
        self.by_dim.get(n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Position of a cell among the cells of its dimension.
    pub fn dim_position(&self, id: CellId) -> usize {
        self.position[id]
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn lookup(&self, name: &str) -> Option<CellId> {
        self.index.get(name).copied()
    }

    pub fn basepoint(&self) -> Option<CellId> {
        self.basepoint
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    pub fn with_basepoint(mut self, basepoint: Option<CellId>) -> Result<Self> {
        self.basepoint = basepoint;
        self.validate()?;
        Ok(self)
    }

    /// Level (simplicial degree) of a simplex.
    pub fn level(&self, s: &SimplexRef) -> usize {
        self.cells[s.cell].dim + s.degens.len()
    }

    /// The basepoint (or a given vertex) degenerated up to `level`.
    pub fn degenerate_vertex(&self, vertex: CellId, level: usize) -> SimplexRef {
        SimplexRef { cell: vertex, degens: (0..level).rev().collect() }
    }

    /// `K(φ)(s)` for a monotone `φ: [p] → [q]` given by its values, `s` at level `q`.
    pub fn apply_operator(&self, phi: &[usize], s: &SimplexRef) -> Result<SimplexRef> {
        let q = self.level(s);
        if phi.is_empty() || phi.iter().any(|&v| v > q) || !phi.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "{phi:?} is not a monotone map into [{q}]"
            )));
        }
        Ok(self.apply_unchecked(phi, s))
    }

    pub(crate) fn apply_unchecked(&self, phi: &[usize], s: &SimplexRef) -> SimplexRef {
        let eta = s.surjection(self.level(s));
        let psi: Vec<usize> = phi.iter().map(|&t| eta[t]).collect();
        self.apply_to_cell(s.cell, psi)
    }

    /// `K(ψ)(x)` for a nondegenerate cell `x` and monotone `ψ: [p] → [dim x]`.
    fn apply_to_cell(&self, cell: CellId, psi: Vec<usize>) -> SimplexRef {
        let m = self.cells[cell].dim;
        let mut hit = vec![false; m + 1];
        for &v in &psi {
            hit[v] = true;
        }
        match (0..=m).rev().find(|&v| !hit[v]) {
            None => SimplexRef::from_surjection(cell, &psi),
            Some(i) => {
                // ψ = δ_i ∘ ψ', so K(ψ)(x) = K(ψ')(d_i x)
                let reduced: Vec<usize> = psi.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
                let face = &self.cells[cell].faces[i];
                self.apply_unchecked(&reduced, face)
            }
        }
    }

    /// `d_i s`.
    pub fn face(&self, i: usize, s: &SimplexRef) -> SimplexRef {
        let q = self.level(s);
        debug_assert!(q >= 1 && i <= q);
        let phi: Vec<usize> = (0..q).map(|t| if t < i { t } else { t + 1 }).collect();
        self.apply_unchecked(&phi, s)
    }

    /// `s_j s`.
    pub fn degeneracy(&self, j: usize, s: &SimplexRef) -> SimplexRef {
        let q = self.level(s);
        debug_assert!(j <= q);
        let phi: Vec<usize> = (0..=q + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
        self.apply_unchecked(&phi, s)
    }

    /// All simplices of `K_p` in the canonical order: by cell id, then by
    /// degeneracy word (lexicographically).
    pub fn level_simplices(&self, p: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for (id, c) in self.cells.iter().enumerate() {
            if c.dim > p {
                continue;
            }
            let mut words: Vec<Vec<usize>> = (0..p)
                .combinations(p - c.dim)
                .map(|mut w| {
                    w.reverse();
                    w
                })
                .collect();
            words.sort();
            out.extend(words.into_iter().map(|degens| SimplexRef { cell: id, degens }));
        }
        out
    }

    /// Number of simplices in `K_p`.
    pub fn level_count(&self, p: usize) -> usize {
        self.cells.iter().filter(|c| c.dim <= p).map(|c| binomial(p, p - c.dim)).sum()
    }

    pub fn display_simplex(&self, s: &SimplexRef) -> String {
        let mut out = String::new();
        for j in &s.degens {
            out.push_str(&format!("s{j}"));
        }
        out.push_str(&self.cells[s.cell].name);
        out
    }
}

impl fmt::Display for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (cells per dimension {:?})", self.name, self.cell_counts())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Builder that assigns cell ids in insertion order.
#[derive(Clone, Debug, Default)]
pub struct SSetBuilder {
    cells: Vec<Cell>,
}

impl SSetBuilder {
    pub fn new() -> Self {
        SSetBuilder::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> CellId {
        self.cell(name, 0, Vec::new())
    }

    pub fn cell(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SimplexRef>) -> CellId {
        self.cells.push(Cell { name: name.into(), dim, faces });
        self.cells.len() - 1
    }

    pub fn build(self, name: impl Into<String>, basepoint: Option<CellId>) -> Result<FiniteSimplicialSet> {
        FiniteSimplicialSet::new(name, self.cells, basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> FiniteSimplicialSet {
        build_standard(&BuildKind::MinimalSphere(1)).unwrap()
    }

    #[test]
    fn surjection_roundtrip() {
        let s = SimplexRef::new(3, vec![0, 2]);
        assert_eq!(s.degens, vec![2, 0]);
        let eta = s.surjection(3);
        assert_eq!(eta, vec![0, 0, 1, 1]);
        assert_eq!(SimplexRef::from_surjection(3, &eta), s);
    }

    #[test]
    fn loop_faces_are_the_vertex() {
        let k = circle();
        let e = SimplexRef::cell(k.cells_of_dim(1)[0]);
        let v = SimplexRef::cell(k.cells_of_dim(0)[0]);
        assert_eq!(k.face(0, &e), v);
        assert_eq!(k.face(1, &e), v);
        assert_eq!(k.apply_operator(&[0, 1], &e).unwrap(), e);
    }

    #[test]
    fn level_counts_of_minimal_circle() {
        let k = circle();
        for p in 0..=20 {
            assert_eq!(k.level_simplices(p).len(), p + 1);
            assert_eq!(k.level_count(p), p + 1);
        }
        let pt = build_standard(&BuildKind::Simplex(0)).unwrap();
        assert_eq!(pt.level_simplices(5).len(), 1);
        let tri = build_standard(&BuildKind::Polygon(3)).unwrap();
        assert_eq!(tri.level_simplices(0).len(), 3);
    }

    #[test]
    fn degeneracy_then_face_identities() {
        let k = build_standard(&BuildKind::Simplex(2)).unwrap();
        for s in k.level_simplices(2) {
            for j in 0..=2 {
                let ds = k.degeneracy(j, &s);
                assert_eq!(k.face(j, &ds), s);
                assert_eq!(k.face(j + 1, &ds), s);
            }
        }
    }

    #[test]
    fn operator_rejects_non_monotone() {
        let k = circle();
        let e = SimplexRef::cell(1);
        assert!(k.apply_operator(&[1, 0], &e).is_err());
        assert!(k.apply_operator(&[0, 2], &e).is_err());
    }

    #[test]
    fn malformed_faces_are_rejected() {
        let mut b = SSetBuilder::new();
        let v = b.vertex("v");
        b.cell("e", 1, vec![SimplexRef::cell(v)]);
        assert!(b.build("bad", None).is_err());

        let mut b = SSetBuilder::new();
        let v = b.vertex("v");
        let w = b.vertex("w");
        let e = b.cell("e", 1, vec![SimplexRef::cell(w), SimplexRef::cell(v)]);
        // d_0 d_2 must equal d_1 d_0: faces chosen inconsistently
        b.cell(
            "t",
            2,
            vec![SimplexRef::cell(e), SimplexRef::cell(e), SimplexRef::cell(e)],
        );
        assert!(b.build("bad", None).is_err());
    }

    fn all_monotone(p: usize, q: usize) -> Vec<Vec<usize>> {
        (0..=q).combinations_with_replacement(p + 1).collect()
    }

    #[test]
    fn operators_compose_functorially() {
        for kind in [
            BuildKind::MinimalSphere(2),
            BuildKind::Polygon(3),
            BuildKind::Simplex(2),
            BuildKind::Moore1(3),
        ] {
            let k = build_standard(&kind).unwrap();
            for r in 0..=3 {
                for s in k.level_simplices(r) {
                    for p in 0..=3 {
                        for phi in all_monotone(p, r) {
                            let mid = k.apply_operator(&phi, &s).unwrap();
                            for m in 0..=3 {
                                for psi in all_monotone(m, p) {
                                    let composed: Vec<usize> = psi.iter().map(|&t| phi[t]).collect();
                                    let direct = k.apply_operator(&composed, &s).unwrap();
                                    let stepwise = k.apply_operator(&psi, &mid).unwrap();
                                    assert_eq!(direct, stepwise, "{kind:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
