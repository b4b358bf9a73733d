use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::cosimplicial::CosimplicialSSet;
use super::hom::enumerate_hom;
use super::tensor::{tensor_under_delta, TensorProduct};
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, SimplexRef, SimplicialMap};

/// A cosimplicial map `Z → X^K` stored as one simplicial map
/// `φ_α: Z[p] → X` per `α ∈ K_p`, indexed like `K.level_simplices(p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleFamily {
    pub maps: Vec<Vec<SimplicialMap>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub source: String,
    pub cosimplicial: String,
    pub target: String,
    pub trunc: usize,
    pub tensor_cells: Vec<usize>,
    pub left_count: usize,
    pub right_count: usize,
    pub bijection_ok: bool,
}

struct Setup<'a> {
    k: &'a FiniteSimplicialSet,
    z: &'a CosimplicialSSet,
    x: &'a FiniteSimplicialSet,
    trunc: usize,
    k_levels: Vec<Vec<SimplexRef>>,
    k_index: Vec<HashMap<SimplexRef, usize>>,
    tensor: TensorProduct,
}

impl<'a> Setup<'a> {
    fn new(k: &'a FiniteSimplicialSet, z: &'a CosimplicialSSet, x: &'a FiniteSimplicialSet, trunc: usize) -> Result<Self> {
        if z.trunc() < trunc {
            return Err(Error::Truncation(format!("{} is stored to level {}, asked for {trunc}", z.name, z.trunc())));
        }
        if k.dim() >= trunc {
            return Err(Error::Truncation(format!("{} has cells in dimension {} ≥ {trunc}", k.name(), k.dim())));
        }
        let tensor = tensor_under_delta(k, z, trunc)?;
        // a generator in the top stored dimension could have companions above it
        if !tensor.set.cells_of_dim(trunc).is_empty() {
            return Err(Error::Truncation(format!(
                "{} has nondegenerate simplices in dimension {trunc}; raise the truncation",
                tensor.set.name()
            )));
        }
        let k_levels: Vec<Vec<SimplexRef>> = (0..=trunc).map(|p| k.level_simplices(p)).collect();
        let k_index = k_levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        Ok(Setup { k, z, x, trunc, k_levels, k_index, tensor })
    }

    /// `φ_α` for a possibly degenerate `α`, from the values on cells:
    /// `φ_{s_j β} = φ_β ∘ s^j`.
    fn extend(&self, cells: &[Option<SimplicialMap>], alpha: &SimplexRef) -> SimplicialMap {
        let mut phi = cells[alpha.cell].clone().expect("cell assigned");
        let mut level = self.k.cell_dim(alpha.cell);
        for &j in alpha.degens.iter().rev() {
            phi = phi.compose(self.z.codegeneracy(level, j)).expect("levels match");
            level += 1;
        }
        phi
    }

    /// All compatible families up to `trunc`, by assigning `φ` to the cells
    /// of `K` in order of dimension subject to `φ_α ∘ d^i = φ_{d_i α}`.
    fn families(&self) -> Result<Vec<CompatibleFamily>> {
        let homs: Vec<Vec<SimplicialMap>> =
            (0..=self.k.dim()).map(|p| enumerate_hom(self.z.level(p), self.x)).collect::<Result<_>>()?;
        let mut order: Vec<usize> = (0..self.k.num_cells()).collect();
        order.sort_by_key(|&c| (self.k.cell_dim(c), c));
        let mut cells = vec![None; self.k.num_cells()];
        let mut out = Vec::new();
        self.search(&homs, &order, 0, &mut cells, &mut out)?;
        Ok(out)
    }

    fn search(
        &self,
        homs: &[Vec<SimplicialMap>],
        order: &[usize],
        at: usize,
        cells: &mut Vec<Option<SimplicialMap>>,
        out: &mut Vec<CompatibleFamily>,
    ) -> Result<()> {
        let Some(&c) = order.get(at) else {
            let maps = self.k_levels.iter().map(|l| l.iter().map(|a| self.extend(cells, a)).collect()).collect();
            let family = CompatibleFamily { maps };
            if !self.is_compatible(&family) {
                return Err(Error::Truncation("a family built from cells fails a stored relation".into()));
            }
            out.push(family);
            return Ok(());
        };
        let p = self.k.cell_dim(c);
        let faces: Vec<SimplicialMap> = self.k.cell(c).faces.iter().map(|f| self.extend(cells, f)).collect();
        for phi in &homs[p] {
            let ok = faces
                .iter()
                .enumerate()
                .all(|(i, f)| phi.compose(self.z.coface(p, i)).map(|m| m.images() == f.images()).unwrap_or(false));
            if ok {
                cells[c] = Some(phi.clone());
                self.search(homs, order, at + 1, cells, out)?;
            }
        }
        cells[c] = None;
        Ok(())
    }

    /// `φ_β ∘ d^i = φ_{d_i β}` and `φ_β ∘ s^j = φ_{s_j β}` on every stored level.
    fn is_compatible(&self, f: &CompatibleFamily) -> bool {
        for p in 0..=self.trunc {
            for (b, beta) in self.k_levels[p].iter().enumerate() {
                let phi = &f.maps[p][b];
                if p >= 1 {
                    for i in 0..=p {
                        let di = self.k_index[p - 1][&self.k.face(i, beta)];
                        if phi.compose(self.z.coface(p, i)).unwrap().images() != f.maps[p - 1][di].images() {
                            return false;
                        }
                    }
                }
                if p < self.trunc {
                    for j in 0..=p {
                        let sj = self.k_index[p + 1][&self.k.degeneracy(j, beta)];
                        if phi.compose(self.z.codegeneracy(p, j)).unwrap().images() != f.maps[p + 1][sj].images() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `ψ[α, z] = φ_α(z)`; `None` if this is not well defined on classes.
    fn to_map(&self, f: &CompatibleFamily) -> Result<Option<SimplicialMap>> {
        let t = &self.tensor;
        let mut images: Vec<Option<SimplexRef>> = vec![None; t.set.num_cells()];
        for q in 0..=self.trunc {
            for (i, (n, a, s)) in t.pairs[q].iter().enumerate() {
                let value = f.maps[*n][self.k_index[*n][a]].apply(s);
                let class = &t.class[q][i];
                // the class is s_w(cell); recover the cell value by a face of the value
                let level_value = reduce(self.x, &value, class);
                match &images[class.cell] {
                    Some(v) if *v != level_value => return Ok(None),
                    Some(_) => {}
                    None => images[class.cell] = Some(level_value),
                }
            }
        }
        let images = images.into_iter().map(|s| s.expect("every cell has a representative")).collect();
        Ok(SimplicialMap::new(t.set.clone(), self.x.clone(), images).ok())
    }

    /// `φ_α(z) = ψ[α, z]`.
    fn to_family(&self, psi: &SimplicialMap) -> Result<CompatibleFamily> {
        let t = &self.tensor;
        let mut maps = Vec::new();
        for (p, level) in self.k_levels.iter().enumerate() {
            let zp = self.z.level(p);
            let row = level
                .iter()
                .map(|a| {
                    let images = (0..zp.num_cells())
                        .map(|c| {
                            let q = zp.cell_dim(c);
                            let class = t.class_of(q, p, a, &SimplexRef::cell(c)).ok_or_else(|| {
                                Error::Truncation(format!("cell of {} in dimension {q} is above the stored range", zp.name()))
                            })?;
                            Ok(psi.apply(class))
                        })
                        .collect::<Result<_>>()?;
                    SimplicialMap::new(zp.clone(), self.x.clone(), images)
                })
                .collect::<Result<_>>()?;
            maps.push(row);
        }
        Ok(CompatibleFamily { maps })
    }
}

/// The value on the nondegenerate cell behind `class = s_w(cell)`, obtained
/// by undoing the degeneracies with faces.
fn reduce(x: &FiniteSimplicialSet, value: &SimplexRef, class: &SimplexRef) -> SimplexRef {
    class.degens.iter().fold(value.clone(), |acc, &j| x.face(j, &acc))
}

/// Compares `hom(K ⊗_Δ Z, X)` with compatible families `Z → X^K` through
/// the explicit correspondence `ψ[α, z] = φ_α(z)`.
pub fn adjunction_check(
    k: &FiniteSimplicialSet,
    z: &CosimplicialSSet,
    x: &FiniteSimplicialSet,
    trunc: usize,
) -> Result<AdjunctionReport> {
    let setup = Setup::new(k, z, x, trunc)?;
    let left = enumerate_hom(&setup.tensor.set, x)?;
    let right = setup.families()?;
    let mut ok = true;
    let mut forward = BTreeSet::new();
    for f in &right {
        match setup.to_map(f)? {
            Some(psi) => {
                ok &= setup.to_family(&psi)? == *f;
                forward.insert(psi.images().to_vec());
            }
            None => ok = false,
        }
    }
    let left_set: BTreeSet<Vec<SimplexRef>> = left.iter().map(|m| m.images().to_vec()).collect();
    ok &= forward == left_set && forward.len() == right.len();
    for psi in &left {
        let f = setup.to_family(psi)?;
        ok &= setup.is_compatible(&f);
    }
    Ok(AdjunctionReport {
        source: k.name().to_string(),
        cosimplicial: z.name.clone(),
        target: x.name().to_string(),
        trunc,
        tensor_cells: setup.tensor.set.cell_counts(),
        left_count: left.len(),
        right_count: right.len(),
        bijection_ok: ok,
    })
}

/// For `g: K → K'`, checks elementwise that restricting a family along `g`
/// agrees with precomposing the corresponding map with `g ⊗ Z`.
pub fn naturality_check(
    g: &SimplicialMap,
    z: &CosimplicialSSet,
    x: &FiniteSimplicialSet,
    trunc: usize,
) -> Result<bool> {
    let (k, k2) = (g.source(), g.target());
    let small = Setup::new(k, z, x, trunc)?;
    let big = Setup::new(k2, z, x, trunc)?;
    // g ⊗ Z on cells: [α, z] ↦ [g α, z]
    let t = &small.tensor;
    let mut images: Vec<Option<SimplexRef>> = vec![None; t.set.num_cells()];
    for q in 0..=trunc {
        for (i, (n, a, s)) in t.pairs[q].iter().enumerate() {
            let class = &t.class[q][i];
            if class.is_degenerate() || images[class.cell].is_some() {
                continue;
            }
            let image = big.tensor.class_of(q, *n, &g.apply(a), s).expect("same levels").clone();
            images[class.cell] = Some(image);
        }
    }
    let images = images.into_iter().map(|s| s.expect("every cell has a representative")).collect();
    let g_tensor = SimplicialMap::new(t.set.clone(), big.tensor.set.clone(), images)?;
    for psi in enumerate_hom(&big.tensor.set, x)? {
        let family = big.to_family(&psi)?;
        let restricted = CompatibleFamily {
            maps: small
                .k_levels
                .iter()
                .enumerate()
                .map(|(p, l)| l.iter().map(|a| family.maps[p][big.k_index[p][&g.apply(a)]].clone()).collect())
                .collect(),
        };
        if small.to_family(&psi.compose(&g_tensor)?)? != restricted {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind, SSetBuilder};

    fn std(kind: BuildKind) -> FiniteSimplicialSet {
        build_standard(&kind).unwrap()
    }

    fn three_points() -> FiniteSimplicialSet {
        let mut b = SSetBuilder::new();
        for v in ["a", "b", "c"] {
            b.vertex(v);
        }
        b.build("three points", None).unwrap()
    }

    #[test]
    fn point_into_interval() {
        let z = CosimplicialSSet::constant(&std(BuildKind::Simplex(0)), 1).unwrap();
        let r = adjunction_check(&std(BuildKind::Simplex(0)), &z, &std(BuildKind::Simplex(1)), 1).unwrap();
        assert_eq!((r.left_count, r.right_count), (2, 2));
        assert!(r.bijection_ok);
    }

    #[test]
    fn two_points_into_three() {
        let z = CosimplicialSSet::constant(&std(BuildKind::Simplex(0)), 1).unwrap();
        let r = adjunction_check(&std(BuildKind::MinimalSphere(0)), &z, &three_points(), 1).unwrap();
        assert_eq!((r.left_count, r.right_count), (9, 9));
        assert!(r.bijection_ok);
    }

    #[test]
    fn circle_with_yoneda() {
        let s1 = std(BuildKind::MinimalSphere(1));
        let z = CosimplicialSSet::yoneda(2).unwrap();
        let r = adjunction_check(&s1, &z, &s1, 2).unwrap();
        assert_eq!((r.left_count, r.right_count), (2, 2));
        assert!(r.bijection_ok);
        assert_eq!(r.tensor_cells, vec![1, 1]);
    }

    #[test]
    fn truncation_too_small() {
        let s1 = std(BuildKind::MinimalSphere(1));
        let z = CosimplicialSSet::yoneda(2).unwrap();
        assert!(matches!(adjunction_check(&s1, &z, &s1, 1), Err(Error::Truncation(_))));
        assert!(matches!(adjunction_check(&s1, &z, &s1, 3), Err(Error::Truncation(_))));
    }

    #[test]
    fn naturality_along_a_collapse() {
        // polygon(3) → S^1 wrapping e0 once and collapsing the other edges
        let tri = std(BuildKind::Polygon(3));
        let s1 = std(BuildKind::MinimalSphere(1));
        let v = SimplexRef::cell(0);
        let c = SimplexRef::cell(1);
        let images: Vec<SimplexRef> = (0..tri.num_cells())
            .map(|i| match (tri.cell_dim(i), tri.cell(i).name.as_str()) {
                (0, _) => v.clone(),
                (_, "e0") => c.clone(),
                _ => SimplexRef::new(0, vec![0]),
            })
            .collect();
        let g = SimplicialMap::new(tri, s1.clone(), images).unwrap();
        let z = CosimplicialSSet::yoneda(2).unwrap();
        assert!(naturality_check(&g, &z, &s1, 2).unwrap());
    }
}
