//! Consistency checks relating the action on `K` to the isotypic
//! decomposition of the mapping-space cohomology.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::isotypic::{check_representation, isotypic_decompose, isotypic_dims, mat_identity, source_isotypic, IsotypicReport, Matrix};
use super::table::{central_idempotents, support_closure, CharacterTable};
use crate::chains::Field;
use crate::error::{Error, Result};
use crate::mapmodel::{CoefficientModel, MappingModel, MappingOptions};
use crate::sset::{FiniteSimplicialSet, SimplicialGroupAction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub source: IsotypicReport,
    pub mapping: IsotypicReport,
    pub betti: Vec<usize>,
    pub closure: BTreeSet<usize>,
    pub checks: Vec<Check>,
    pub model_dependent: bool,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn kron<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![field.zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if field.is_zero(&a[i][j]) {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = field.mul(&a[i][j], &b[k][l]);
                }
            }
        }
    }
    out
}

fn block_diagonal<F: Field>(field: &F, blocks: &[&Matrix<F::Elem>]) -> Matrix<F::Elem> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![field.zero(); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out[off + i][off + j] = v.clone();
            }
        }
        off += b.len();
    }
    out
}

/// Isotypic decomposition of `H^n` of the mapping space for `n ≤ max_degree`.
pub fn mapping_isotypic<F: Field>(
    model: &MappingModel<F>,
    action: &SimplicialGroupAction,
    table: &CharacterTable<F::Elem>,
) -> Result<IsotypicReport> {
    let per_g: Vec<Vec<Matrix<F::Elem>>> =
        action.maps.iter().map(|g| model.transport(g)).collect::<Result<_>>()?;
    let per_degree: BTreeMap<i64, Vec<Matrix<F::Elem>>> = (0..=model.max_degree)
        .map(|n| (n as i64, per_g.iter().map(|m| m[n].clone()).collect()))
        .collect();
    isotypic_decompose(&model.field, &action.group, table, &per_degree)
}

/// Runs the source and mapping-space decompositions and the checks:
/// completeness, Schur divisibility, support inside the closure of the
/// source support, and for actions trivial on `H_*(K)` the identity action
/// on cohomology together with the triviality of `H_*(K)^{⊗(n+1)}`.
pub fn theorem_checks<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    action: &SimplicialGroupAction,
    coeff: &CoefficientModel,
    table: &CharacterTable<F::Elem>,
    max_degree: usize,
    options: MappingOptions,
) -> Result<TheoremReport> {
    let model = MappingModel::build(field, k, coeff, max_degree, options)?;
    theorem_checks_on(&model, k, action, table, coeff.model_dependent())
}

/// [`theorem_checks`] on an already assembled model.
pub fn theorem_checks_on<F: Field>(
    model: &MappingModel<F>,
    k: &FiniteSimplicialSet,
    action: &SimplicialGroupAction,
    table: &CharacterTable<F::Elem>,
    model_dependent: bool,
) -> Result<TheoremReport> {
    let field = &model.field;
    let max_degree = model.max_degree;
    let group = &action.group;
    let source = source_isotypic(field, k, action, table)?;
    let mapping = mapping_isotypic(model, action, table)?;
    let betti = model.betti();
    let closure = support_closure(field, group, table, &source.support)?;
    let mut checks = Vec::new();

    checks.push(Check::new(
        "completeness",
        mapping.is_complete() && (0..=max_degree).all(|n| mapping.totals[&(n as i64)] == betti[n]),
        format!("totals {:?}", mapping.totals.values().collect::<Vec<_>>()),
    ));
    checks.push(Check::new(
        "schur_divisibility",
        mapping.schur_divisible(&table.degrees) && source.schur_divisible(&table.degrees),
        format!("degrees {:?}", table.degrees),
    ));
    for n in 0..=max_degree {
        let dims = &mapping.components[&(n as i64)];
        let outside: Vec<usize> = (0..dims.len()).filter(|i| dims[*i] > 0 && !closure.contains(i)).collect();
        checks.push(Check::new(
            format!("support_in_closure[{n}]"),
            outside.is_empty(),
            format!("components {dims:?}, closure {closure:?}"),
        ));
    }

    let trivial_source = source.support.iter().all(|&i| i == 0);
    if trivial_source {
        for (gi, g) in action.maps.iter().enumerate() {
            let mats = model.transport(g)?;
            let bad: Vec<usize> =
                (0..=max_degree).filter(|&n| mats[n] != mat_identity(field, betti[n])).collect();
            checks.push(Check::new(
                format!("identity_action[{}]", group.names()[gi]),
                bad.is_empty(),
                if bad.is_empty() { "identity in every degree".to_string() } else { format!("not the identity in degrees {bad:?}") },
            ));
        }
        let es = central_idempotents(field, group, table)?;
        let src = crate::sset::validate_action(field, k, action)?;
        let per_g: Vec<Matrix<F::Elem>> = (0..group.order())
            .map(|g| {
                let blocks: Vec<&Matrix<F::Elem>> = src.matrices.iter().map(|m| &m[g]).collect();
                block_diagonal(field, &blocks)
            })
            .collect();
        check_representation(field, group, &per_g)?;
        let mut powers = per_g.clone();
        let mut ok = true;
        for n in 0..=max_degree {
            if n > 0 {
                powers = powers.iter().zip(&per_g).map(|(a, b)| kron(field, a, b)).collect();
            }
            let dims = isotypic_dims(field, &es, &powers);
            if dims.iter().skip(1).any(|&d| d > 0) {
                ok = false;
            }
        }
        checks.push(Check::new(
            "tensor_powers_trivial",
            ok,
            format!("H_*(K)^(n+1) for n <= {max_degree}"),
        ));
        checks.push(Check::new(
            "trivial_component_only",
            mapping.support.iter().all(|&i| i == 0),
            format!("support {:?}", mapping.support),
        ));
    }
    if checks.is_empty() {
        return Err(Error::InvalidParameter("no checks ran".into()));
    }
    Ok(TheoremReport { source, mapping, betti, closure, checks, model_dependent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{FieldSpec, PrimeField, Rationals};
    use crate::mapmodel::FreeGCAlgebra;
    use crate::sset::{polygon_rotation, wedge_cycle, zigzag_reflection};

    fn s3(field: FieldSpec) -> CoefficientModel {
        CoefficientModel::tensor("S3", field, 2, FreeGCAlgebra::exterior("x", 3).unwrap()).unwrap()
    }

    #[test]
    fn rotation_of_triangle() {
        let f = PrimeField::new(7).unwrap();
        let act = polygon_rotation(3).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &2).unwrap();
        let r = theorem_checks(&f, act.space(), &act, &s3(FieldSpec::PrimeField(7)), &t, 5, MappingOptions::default())
            .unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.mapping.support, [0].into());
        assert!(r.checks.iter().any(|c| c.name == "tensor_powers_trivial"));
    }

    #[test]
    fn reflection_on_zigzag() {
        let f = Rationals;
        let act = zigzag_reflection(4).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &f.from_i64(-1)).unwrap();
        let r = theorem_checks(&f, act.space(), &act, &s3(FieldSpec::Rationals), &t, 5, MappingOptions::default())
            .unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.closure, [0, 1].into());
        assert_eq!(r.betti, vec![1, 0, 1, 1, 1, 1]);
        // the sign representation shows up on the mapping space
        assert!(r.mapping.support.contains(&1));
    }

    #[test]
    fn wedge_of_circles_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let act = wedge_cycle(3, 1).unwrap();
        let t = CharacterTable::cyclic(&f, &act.group, &2).unwrap();
        let opts = MappingOptions { pointed: true, ..Default::default() };
        let r = theorem_checks(&f, act.space(), &act, &s3(FieldSpec::PrimeField(7)), &t, 4, opts).unwrap();
        assert!(r.passed());
        assert!(r.model_dependent);
        assert_eq!(r.mapping.components[&2], vec![1, 1, 1]);
    }
}
