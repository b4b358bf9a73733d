//! Isotypic decomposition of finite-dimensional representations.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::group::GroupData;
use super::table::{central_idempotents, CharacterTable};
use crate::chains::{rank, Field, SparseMatrix};
use crate::error::{Error, Result};
use crate::sset::{validate_action, FiniteSimplicialSet, SimplicialGroupAction};

/// Dense square matrix, row-major.
pub type Matrix<E> = Vec<Vec<E>>;

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![field.zero(); m]; n];
    for i in 0..n {
        for (k, x) in a[i].iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            for j in 0..m {
                out[i][j] = field.add(&out[i][j], &field.mul(x, &b[k][j]));
            }
        }
    }
    out
}

pub fn mat_identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

/// Checks `ρ(e) = 1` and `ρ(g)ρ(h) = ρ(gh)` for matrices indexed by group element.
pub fn check_representation<F: Field>(field: &F, group: &GroupData, mats: &[Matrix<F::Elem>]) -> Result<()> {
    if mats.len() != group.order() {
        return Err(Error::NotRepresentation(format!(
            "{} matrices for a group of order {}",
            mats.len(),
            group.order()
        )));
    }
    let dim = mats[0].len();
    if mats.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
        return Err(Error::NotRepresentation("matrices are not square of a common size".into()));
    }
    if mats[group.identity()] != mat_identity(field, dim) {
        return Err(Error::NotRepresentation("the identity does not act as the identity matrix".into()));
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if mat_mul(field, &mats[a], &mats[b]) != mats[group.mul(a, b)] {
                return Err(Error::NotRepresentation(format!(
                    "ρ({})ρ({}) ≠ ρ({})",
                    group.names()[a],
                    group.names()[b],
                    group.names()[group.mul(a, b)]
                )));
            }
        }
    }
    Ok(())
}

/// `ρ(x) = Σ_g x_g ρ(g)` for a group-algebra element `x`.
pub fn apply_group_algebra<F: Field>(field: &F, x: &[F::Elem], mats: &[Matrix<F::Elem>]) -> Matrix<F::Elem> {
    let dim = mats[0].len();
    let mut out = vec![vec![field.zero(); dim]; dim];
    for (c, m) in x.iter().zip(mats) {
        if field.is_zero(c) {
            continue;
        }
        for i in 0..dim {
            for j in 0..dim {
                out[i][j] = field.add(&out[i][j], &field.mul(c, &m[i][j]));
            }
        }
    }
    out
}

/// Dimensions `rank ρ(e_i)` of the isotypic components of one representation.
pub fn isotypic_dims<F: Field>(
    field: &F,
    idempotents: &[Vec<F::Elem>],
    mats: &[Matrix<F::Elem>],
) -> Vec<usize> {
    let dim = mats[0].len();
    idempotents
        .iter()
        .map(|e| {
            if dim == 0 {
                return 0;
            }
            let p = apply_group_algebra(field, e, mats);
            rank(field, &SparseMatrix::from_dense(field, &p, dim))
        })
        .collect()
}

/// Isotypic dimensions per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicReport {
    pub labels: Vec<String>,
    /// Degree → dimension of each isotypic component.
    pub components: BTreeMap<i64, Vec<usize>>,
    pub totals: BTreeMap<i64, usize>,
    /// Irreducibles with a nonzero component in some degree.
    pub support: BTreeSet<usize>,
}

impl IsotypicReport {
    /// Σ_i dim_i = total in every degree.
    pub fn is_complete(&self) -> bool {
        self.components.iter().all(|(n, dims)| dims.iter().sum::<usize>() == self.totals[n])
    }

    /// Every component dimension is a multiple of the degree of its irreducible.
    pub fn schur_divisible(&self, degrees: &[usize]) -> bool {
        self.components.values().all(|dims| dims.iter().zip(degrees).all(|(d, n)| d % n == 0))
    }

    /// Degrees in which component `i` is nonzero, with its dimension.
    pub fn distribution(&self, i: usize) -> BTreeMap<i64, usize> {
        self.components
            .iter()
            .filter(|(_, dims)| dims[i] > 0)
            .map(|(n, dims)| (*n, dims[i]))
            .collect()
    }
}

/// Decomposes representations given degreewise (degree → matrices by group element).
pub fn isotypic_decompose<F: Field>(
    field: &F,
    group: &GroupData,
    table: &CharacterTable<F::Elem>,
    per_degree: &BTreeMap<i64, Vec<Matrix<F::Elem>>>,
) -> Result<IsotypicReport> {
    let es = central_idempotents(field, group, table)?;
    let mut components = BTreeMap::new();
    let mut totals = BTreeMap::new();
    let mut support = BTreeSet::new();
    for (n, mats) in per_degree {
        check_representation(field, group, mats)
            .map_err(|e| Error::NotRepresentation(format!("degree {n}: {e}")))?;
        let dims = isotypic_dims(field, &es, mats);
        for (i, d) in dims.iter().enumerate() {
            if *d > 0 {
                support.insert(i);
            }
        }
        totals.insert(*n, mats[0].len());
        components.insert(*n, dims);
    }
    Ok(IsotypicReport { labels: table.labels.clone(), components, totals, support })
}

/// Isotypic decomposition of `H_*(K)` under the induced action.
pub fn source_isotypic<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    action: &SimplicialGroupAction,
    table: &CharacterTable<F::Elem>,
) -> Result<IsotypicReport> {
    let report = validate_action(field, k, action)?;
    let per_degree = report.matrices.into_iter().enumerate().map(|(n, m)| (n as i64, m)).collect();
    isotypic_decompose(field, &action.group, table, &per_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{PrimeField, Rationals};
    use crate::sset::{build_standard, polygon_rotation, smash, switch_action, wedge_cycle, zigzag_reflection, BuildKind};

    #[test]
    fn trivial_action_is_all_trivial() {
        let f = Rationals;
        let k = build_standard(&BuildKind::MinimalSphere(2)).unwrap();
        let act = SimplicialGroupAction::trivial(&k);
        let t = CharacterTable::cyclic(&f, &act.group, &f.one()).unwrap();
        let r = source_isotypic(&f, &k, &act, &t).unwrap();
        assert_eq!(r.components[&2], vec![1]);
        assert!(r.is_complete());
    }

    #[test]
    fn reflection_gives_sign_component() {
        let f = Rationals;
        let act = zigzag_reflection(4).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &f.from_i64(-1)).unwrap();
        let r = source_isotypic(&f, act.space(), &act, &t).unwrap();
        assert_eq!(r.components[&0], vec![1, 0]);
        assert_eq!(r.components[&1], vec![0, 1]);
    }

    #[test]
    fn rotation_of_triangle_is_trivial() {
        let f = PrimeField::new(7).unwrap();
        let act = polygon_rotation(3).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &2).unwrap();
        let r = source_isotypic(&f, act.space(), &act, &t).unwrap();
        assert_eq!(r.support, [0].into());
    }

    #[test]
    fn wedge_of_three_circles_splits_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let act = wedge_cycle(3, 1).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &2).unwrap();
        let r = source_isotypic(&f, act.space(), &act, &t).unwrap();
        assert_eq!(r.components[&1], vec![1, 1, 1]);
    }

    #[test]
    fn moore_smash_switch_split() {
        let f = PrimeField::new(3).unwrap();
        let m = build_standard(&BuildKind::Moore1(3)).unwrap();
        let sm = smash(&m, &m).unwrap();
        let sw = switch_action(&sm).unwrap();
        let act = SimplicialGroupAction::cyclic(sw, 2).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &2).unwrap();
        let r = source_isotypic(&f, &sm.set, &act, &t).unwrap();
        let dims: Vec<usize> = (2..=4).map(|n| r.totals[&n]).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        let a: Vec<i64> = r.distribution(0).into_keys().filter(|&n| n > 0).collect();
        let b: Vec<i64> = r.distribution(1).into_keys().collect();
        let mut pair = vec![a, b];
        pair.sort();
        assert_eq!(pair, vec![vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn non_representation_is_rejected() {
        let f = Rationals;
        let g = GroupData::cyclic(2).unwrap();
        let mats = vec![vec![vec![f.one()]], vec![vec![f.from_i64(2)]]];
        assert!(matches!(check_representation(&f, &g, &mats), Err(Error::NotRepresentation(_))));
    }
}
