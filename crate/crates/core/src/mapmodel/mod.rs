//! Cochain models of mapping spaces `Map(|K|, Y)`: the normalized
//! bicomplex of `Y^{K_•}`, its total cohomology, ring structure and the
//! action of automorphisms of `K`.

pub mod algebra;
pub mod checks;
pub mod coeff;
pub mod columns;
pub mod levels;

use serde::Serialize;

pub use algebra::{AlgebraBasis, FreeGCAlgebra, Monomial, Polynomial};
pub use checks::{check_model, ModelChecks};
pub use coeff::{Backend, CoefficientKind, CoefficientModel};
pub use columns::{build_columns, linear_normalized_dim, ColumnOptions, NormalizedColumns};

use crate::chains::{complex_homology, Bicomplex, Field, FieldSpec, HomologyGroup, PrimeField, Rationals, SparseVec, TotalComplex};
use crate::error::{Error, Result};
use crate::grepr::Matrix;
use crate::sset::{FiniteSimplicialSet, SimplicialMap};

/// `c(N+1) + dim K + 1`, the last column that can meet total degrees `≤ N+1`.
pub fn default_pmax(k: &FiniteSimplicialSet, connectivity: usize, max_degree: usize) -> Result<usize> {
    if k.dim() > connectivity {
        return Err(Error::Hypothesis(format!(
            "dim {} = {} exceeds the connectivity {connectivity} of the target",
            k.name(),
            k.dim()
        )));
    }
    Ok(connectivity * (max_degree + 1) + k.dim() + 1)
}

/// `q_max(p) = N + 1 + p`, enough for the total complex through degree `N + 1`.
pub fn q_bounds(p_max: usize, max_degree: usize) -> Vec<usize> {
    (0..=p_max).map(|p| max_degree + 1 + p).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MappingOptions {
    pub pointed: bool,
    pub reversed: bool,
    /// Overrides the default column bound.
    pub p_max: Option<usize>,
}

/// The assembled model through total degree `max_degree`.
#[derive(Clone, Debug)]
pub struct MappingModel<F: Field> {
    pub field: F,
    pub columns: NormalizedColumns<F>,
    pub bicomplex: Bicomplex<F::Elem>,
    pub total: TotalComplex<F::Elem>,
    /// Cohomology in degrees `0..=max_degree`.
    pub groups: Vec<HomologyGroup<F::Elem>>,
    pub max_degree: usize,
}

impl<F: Field> MappingModel<F> {
    pub fn build(
        field: &F,
        k: &FiniteSimplicialSet,
        coeff: &CoefficientModel,
        max_degree: usize,
        options: MappingOptions,
    ) -> Result<Self> {
        coeff.validate()?;
        let p_max = match options.p_max {
            Some(p) => {
                if k.dim() > coeff.connectivity {
                    return Err(Error::Hypothesis(format!(
                        "dim {} = {} exceeds the connectivity {} of the target",
                        k.name(),
                        k.dim(),
                        coeff.connectivity
                    )));
                }
                p
            }
            None => default_pmax(k, coeff.connectivity, max_degree)?,
        };
        let col_opts = ColumnOptions { pointed: options.pointed, reversed: options.reversed };
        let columns = build_columns(field, k, coeff, &q_bounds(p_max, max_degree), col_opts)?;
        let bicomplex = columns.bicomplex()?;
        let total = bicomplex.total_complex(field, max_degree as i64)?;
        let groups = complex_homology(field, &total.complex, 0, max_degree as i64)?;
        Ok(MappingModel { field: field.clone(), columns, bicomplex, total, groups, max_degree })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.dim).collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.total.complex.dim(n).unwrap_or(0)
    }

    /// `D` out of total degree `n`.
    pub fn differential(&self, n: i64, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>> {
        Ok(self.total.complex.differential(n)?.apply(&self.field, v))
    }

    /// Splits a total-degree vector into `(p, q, block)` pieces.
    pub fn blocks(&self, n: i64, v: &SparseVec<F::Elem>) -> Vec<(usize, usize, SparseVec<F::Elem>)> {
        self.total.split::<F>(n, v, |p, q| self.columns.dim(p, q))
    }

    /// Product of total-degree vectors; blocks beyond the stored columns are dropped.
    pub fn product(&self, (n1, x): (i64, &SparseVec<F::Elem>), (n2, y): (i64, &SparseVec<F::Elem>)) -> Result<SparseVec<F::Elem>> {
        let n = n1 + n2;
        if n > self.max_degree as i64 + 1 {
            return Err(Error::InsufficientRange(format!("product in degree {n} beyond {}", self.max_degree + 1)));
        }
        let f = &self.field;
        let mut out = SparseVec::new();
        for (p1, q1, xb) in self.blocks(n1, x) {
            for (p2, q2, yb) in self.blocks(n2, y) {
                if p1 + p2 > self.columns.p_max() {
                    continue;
                }
                let Some(off) = self.total.offset(n, p1 + p2, q1 + q2) else { continue };
                let z = self.columns.block_product((p1, q1, &xb), (p2, q2, &yb))?;
                out = out.add(f, &z.shift(off));
            }
        }
        Ok(out)
    }

    /// The unit class in degree 0.
    pub fn unit(&self) -> SparseVec<F::Elem> {
        let off = self.total.offset(0, 0, 0).unwrap_or(0);
        self.columns.unit().shift(off)
    }

    /// Products of representative classes, in the representative basis of the target degree.
    pub fn ring_table(&self) -> Result<Vec<RingEntry>> {
        let f = &self.field;
        let mut out = Vec::new();
        for a in 1..=self.max_degree {
            for b in a..=self.max_degree - a {
                for (i, x) in self.groups[a].reps.iter().enumerate() {
                    for (j, y) in self.groups[b].reps.iter().enumerate() {
                        if a == b && j < i {
                            continue;
                        }
                        let z = self.product((a as i64, x), (b as i64, y))?;
                        let coords = self.groups[a + b].coords(f, &z)?;
                        out.push(RingEntry {
                            left: (a, i),
                            right: (b, j),
                            product: coords.iter().map(|c| f.render(c)).collect(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of the induced map on `H^n` for every `n ≤ max_degree`.
    pub fn transport(&self, g: &SimplicialMap) -> Result<Vec<Matrix<F::Elem>>> {
        let f = &self.field;
        let mats = self.columns.action_matrices(g)?;
        let apply = |n: i64, v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            let mut out = SparseVec::new();
            for (p, q, b) in self.blocks(n, v) {
                let img = mats[p][q].apply(f, &b);
                let off = self.total.offset(n, p, q).expect("same block");
                out = out.add(f, &img.shift(off));
            }
            out
        };
        // chain map check on a basis of every degree through max_degree
        for n in 0..=self.max_degree as i64 {
            for j in 0..self.dim(n) {
                let e = SparseVec::unit(f, j);
                let lhs = self.differential(n, &apply(n, &e))?;
                let rhs = apply(n + 1, &self.differential(n, &e)?);
                if lhs != rhs {
                    return Err(Error::ActionNotChainMap(format!("in total degree {n}")));
                }
            }
        }
        self.groups
            .iter()
            .map(|g| g.induced_matrix(f, |v| apply(g.degree, v)))
            .collect()
    }

    /// Labelled representatives of every cohomology class.
    pub fn representatives(&self) -> Vec<Vec<String>> {
        let f = &self.field;
        self.groups
            .iter()
            .map(|g| {
                g.reps
                    .iter()
                    .map(|r| {
                        let mut terms = Vec::new();
                        for (p, q, b) in self.blocks(g.degree, r) {
                            for (a, c) in b.iter() {
                                let coef = if f.is_one(c) { String::new() } else { format!("{}·", f.render(c)) };
                                terms.push(format!("{coef}{}", self.columns.label(p, q, *a)));
                            }
                        }
                        terms.join(" + ")
                    })
                    .collect()
            })
            .collect()
    }
}

/// One product of representative classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingEntry {
    /// (degree, index) of the left factor.
    pub left: (usize, usize),
    pub right: (usize, usize),
    /// Coordinates of the product in the target degree.
    pub product: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub p_max: usize,
    pub betti: Vec<usize>,
    pub stable: bool,
}

/// Field-independent summary of a mapping space computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingCohomology {
    pub source: String,
    pub target: String,
    pub field: FieldSpec,
    pub backend: Backend,
    pub pointed: bool,
    pub max_degree: usize,
    pub p_max: usize,
    pub betti: Vec<usize>,
    pub representatives: Vec<Vec<String>>,
    pub ring: Vec<RingEntry>,
    pub stabilization: Option<Stabilization>,
    pub model_dependent: bool,
}

fn summarize<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    coeff: &CoefficientModel,
    max_degree: usize,
    options: MappingOptions,
    stabilize: bool,
) -> Result<MappingCohomology> {
    let model = MappingModel::build(field, k, coeff, max_degree, options)?;
    let p_max = model.columns.p_max();
    let betti = model.betti();
    let stabilization = if stabilize {
        let wider = MappingOptions { p_max: Some(p_max + 2), ..options };
        let again = MappingModel::build(field, k, coeff, max_degree, wider)?.betti();
        Some(Stabilization { p_max: p_max + 2, stable: again == betti, betti: again })
    } else {
        None
    };
    Ok(MappingCohomology {
        source: k.name().to_string(),
        target: coeff.name.clone(),
        field: field.spec(),
        backend: coeff.backend(),
        pointed: options.pointed,
        max_degree,
        p_max,
        representatives: model.representatives(),
        ring: model.ring_table()?,
        betti,
        stabilization,
        model_dependent: coeff.model_dependent(),
    })
}

/// Cohomology of `Map(|K|, Y)` (or the based maps) through degree `max_degree`.
pub fn mapping_cohomology(
    k: &FiniteSimplicialSet,
    coeff: &CoefficientModel,
    max_degree: usize,
    options: MappingOptions,
    stabilize: bool,
) -> Result<MappingCohomology> {
    match coeff.field {
        FieldSpec::Rationals => summarize(&Rationals, k, coeff, max_degree, options, stabilize),
        FieldSpec::PrimeField(p) => summarize(&PrimeField::new(p)?, k, coeff, max_degree, options, stabilize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};
    use num_rational::BigRational;

    fn s3_model(field: FieldSpec) -> CoefficientModel {
        CoefficientModel::tensor("S3", field, 2, FreeGCAlgebra::exterior("x", 3).unwrap()).unwrap()
    }

    fn betti(kind: BuildKind, coeff: &CoefficientModel, n: usize, pointed: bool) -> Vec<usize> {
        let k = build_standard(&kind).unwrap();
        let opts = MappingOptions { pointed, ..Default::default() };
        mapping_cohomology(&k, coeff, n, opts, false).unwrap().betti
    }

    #[test]
    fn point_and_two_points() {
        let c = s3_model(FieldSpec::Rationals);
        assert_eq!(betti(BuildKind::Simplex(0), &c, 6, false), vec![1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(betti(BuildKind::MinimalSphere(0), &c, 6, false), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn free_loops_on_three_sphere() {
        let c = s3_model(FieldSpec::Rationals);
        assert_eq!(betti(BuildKind::MinimalSphere(1), &c, 6, false), vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(betti(BuildKind::Polygon(3), &c, 5, false), vec![1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn based_loops() {
        let c = s3_model(FieldSpec::Rationals);
        assert_eq!(betti(BuildKind::MinimalSphere(1), &c, 6, true), vec![1, 0, 1, 0, 1, 0, 1]);
        // S^2 modelled by y (deg 2), x (deg 3), dx = y^2: ΩS^2 has one class in each degree
        let one = BigRational::from_integer(1.into());
        let a = FreeGCAlgebra::new(vec![("y".into(), 2), ("x".into(), 3)], vec![vec![], vec![(one, vec![2, 0])]]).unwrap();
        let c2 = CoefficientModel::tensor("S2", FieldSpec::Rationals, 1, a).unwrap();
        assert_eq!(betti(BuildKind::MinimalSphere(1), &c2, 5, true), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn simplicial_backend_agrees_on_points() {
        let s3 = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
        let c = CoefficientModel::simplicial("S3", FieldSpec::Rationals, 2, s3).unwrap();
        assert_eq!(betti(BuildKind::Simplex(0), &c, 6, false), vec![1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(betti(BuildKind::MinimalSphere(0), &c, 6, false), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn connectivity_surrogate_is_enforced() {
        let k = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
        let c = s3_model(FieldSpec::Rationals);
        let r = mapping_cohomology(&k, &c, 3, MappingOptions::default(), false);
        assert!(matches!(r, Err(Error::Hypothesis(_))));
    }
}
