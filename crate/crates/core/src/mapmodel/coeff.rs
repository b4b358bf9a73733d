//! Coefficient models for the target space.

use serde::Serialize;

use super::algebra::FreeGCAlgebra;
use crate::chains::FieldSpec;
use crate::error::{Error, Result};
use crate::sset::FiniteSimplicialSet;

/// How the target `Y` enters the computation.
#[derive(Clone, Debug)]
pub enum CoefficientKind {
    /// A strictly commutative cochain algebra model, tensored over the levels of `K`.
    Tensor(FreeGCAlgebra),
    /// A reduced finite simplicial set whose products model `Y^{K_p}`.
    Simplicial(FiniteSimplicialSet),
}

#[derive(Clone, Debug)]
pub struct CoefficientModel {
    pub name: String,
    pub field: FieldSpec,
    /// `Y` is declared `c`-connected.
    pub connectivity: usize,
    pub kind: CoefficientKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Tensor,
    Simplicial,
}

impl CoefficientModel {
    pub fn tensor(name: impl Into<String>, field: FieldSpec, connectivity: usize, a: FreeGCAlgebra) -> Result<Self> {
        let m = CoefficientModel { name: name.into(), field, connectivity, kind: CoefficientKind::Tensor(a) };
        m.validate()?;
        Ok(m)
    }

    pub fn simplicial(
        name: impl Into<String>,
        field: FieldSpec,
        connectivity: usize,
        l: FiniteSimplicialSet,
    ) -> Result<Self> {
        let m = CoefficientModel { name: name.into(), field, connectivity, kind: CoefficientKind::Simplicial(l) };
        m.validate()?;
        Ok(m)
    }

    pub fn backend(&self) -> Backend {
        match self.kind {
            CoefficientKind::Tensor(_) => Backend::Tensor,
            CoefficientKind::Simplicial(_) => Backend::Simplicial,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        let c = self.connectivity;
        match &self.kind {
            CoefficientKind::Tensor(a) => {
                if !a.is_c_connected(c) {
                    return Err(Error::Coefficients(format!(
                        "a generator has degree {} but the model is declared {c}-connected",
                        a.min_degree()
                    )));
                }
            }
            CoefficientKind::Simplicial(l) => {
                l.check_simplicial_identities()?;
                if l.cells_of_dim(0).len() != 1 {
                    return Err(Error::Coefficients(format!(
                        "`{}` has {} vertices, a reduced set is required",
                        l.name(),
                        l.cells_of_dim(0).len()
                    )));
                }
                if let Some(n) = (1..=c.min(l.dim())).find(|&n| !l.cells_of_dim(n).is_empty()) {
                    return Err(Error::Coefficients(format!(
                        "`{}` has nondegenerate {n}-cells but is declared {c}-connected",
                        l.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the tensor model is only a model up to the choice of a
    /// commutative representative (strict commutativity fails over `F_p`).
    pub fn model_dependent(&self) -> bool {
        matches!(self.kind, CoefficientKind::Tensor(_)) && self.field != FieldSpec::Rationals
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};

    #[test]
    fn connectivity_is_checked() {
        let a = FreeGCAlgebra::exterior("x", 3).unwrap();
        assert!(CoefficientModel::tensor("S3", FieldSpec::Rationals, 2, a.clone()).is_ok());
        assert!(matches!(
            CoefficientModel::tensor("S3", FieldSpec::Rationals, 3, a),
            Err(Error::Coefficients(_))
        ));
        let s3 = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
        assert!(CoefficientModel::simplicial("S3", FieldSpec::Rationals, 2, s3.clone()).is_ok());
        assert!(CoefficientModel::simplicial("S3", FieldSpec::Rationals, 3, s3).is_err());
        let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
        assert!(CoefficientModel::simplicial("I", FieldSpec::Rationals, 0, d1).is_err());
    }
}
