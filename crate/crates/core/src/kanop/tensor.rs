use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::cosimplicial::CosimplicialSSet;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, SSetBuilder, SimplexRef};

/// `K ⊗_Δ Z` up to dimension `trunc`, together with the class of every
/// generating pair `(α, z)`, `α ∈ K_n`, `z ∈ Z[n]_q`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub set: FiniteSimplicialSet,
    pub trunc: usize,
    /// `pairs[q]` lists every `(n, α, z)` with `z` a `q`-simplex of `Z[n]`.
    pub pairs: Vec<Vec<(usize, SimplexRef, SimplexRef)>>,
    /// `class[q][i]` is the simplex of `set` represented by `pairs[q][i]`.
    pub class: Vec<Vec<SimplexRef>>,
    lookup: Vec<HashMap<(usize, SimplexRef, SimplexRef), usize>>,
}

impl TensorProduct {
    /// The simplex represented by `(α, z)`, `α ∈ K_n`, `z ∈ Z[n]_q`.
    pub fn class_of(&self, q: usize, n: usize, alpha: &SimplexRef, z: &SimplexRef) -> Option<&SimplexRef> {
        let i = self.lookup.get(q)?.get(&(n, alpha.clone(), z.clone()))?;
        Some(&self.class[q][*i])
    }
}

/// `s_j` on a simplex in normal form, without reference to a containing set.
fn degenerate(s: &SimplexRef, level: usize, j: usize) -> SimplexRef {
    let eta = s.surjection(level);
    let psi: Vec<usize> = (0..=level + 1).map(|t| eta[if t <= j { t } else { t - 1 }]).collect();
    SimplexRef::from_surjection(s.cell, &psi)
}

/// The coend `⊔_n K_n × Z[n] / ~` computed levelwise by union-find over the
/// relations `(d_i α, z) ~ (α, d^i z)` and `(s_j α, z) ~ (α, s^j z)`, with
/// `n` running over the stored levels of `Z`.
pub fn tensor_under_delta(k: &FiniteSimplicialSet, z: &CosimplicialSSet, trunc: usize) -> Result<TensorProduct> {
    let top = z.trunc();
    if top < k.dim().max(trunc) {
        return Err(Error::Truncation(format!(
            "{} is stored to level {top}, need {} for {} up to dimension {trunc}",
            z.name,
            k.dim().max(trunc),
            k.name()
        )));
    }
    let k_levels: Vec<Vec<SimplexRef>> = (0..=top).map(|n| k.level_simplices(n)).collect();
    let mut pairs = Vec::new();
    let mut lookup: Vec<HashMap<(usize, SimplexRef, SimplexRef), usize>> = Vec::new();
    let mut class: Vec<Vec<SimplexRef>> = Vec::new();
    let mut builder = SSetBuilder::new();

    for q in 0..=trunc {
        let z_levels: Vec<Vec<SimplexRef>> = (0..=top).map(|n| z.level(n).level_simplices(q)).collect();
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for n in 0..=top {
            for a in &k_levels[n] {
                for s in &z_levels[n] {
                    index.insert((n, a.clone(), s.clone()), list.len());
                    list.push((n, a.clone(), s.clone()));
                }
            }
        }
        let mut uf = UnionFind::<usize>::new(list.len());
        for n in 0..=top {
            for a in &k_levels[n] {
                if n >= 1 {
                    for i in 0..=n {
                        let da = k.face(i, a);
                        for s in &z_levels[n - 1] {
                            let lhs = index[&(n - 1, da.clone(), s.clone())];
                            let rhs = index[&(n, a.clone(), z.coface(n, i).apply(s))];
                            uf.union(lhs, rhs);
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let sa = k.degeneracy(j, a);
                        for s in &z_levels[n + 1] {
                            let lhs = index[&(n + 1, sa.clone(), s.clone())];
                            let rhs = index[&(n, a.clone(), z.codegeneracy(n, j).apply(s))];
                            uf.union(lhs, rhs);
                        }
                    }
                }
            }
        }
        // degenerate classes first, then one new cell per remaining class
        let mut root_ref: HashMap<usize, SimplexRef> = HashMap::new();
        if q > 0 {
            let prev: &Vec<(usize, SimplexRef, SimplexRef)> = &pairs[q - 1];
            for (i, (n, a, s)) in prev.iter().enumerate() {
                for j in 0..q {
                    let lifted = z.level(*n).degeneracy(j, s);
                    let root = uf.find(index[&(*n, a.clone(), lifted)]);
                    root_ref.entry(root).or_insert_with(|| degenerate(&class[q - 1][i], q - 1, j));
                }
            }
        }
        for (i, (n, a, s)) in list.iter().enumerate() {
            let root = uf.find(i);
            if root_ref.contains_key(&root) {
                continue;
            }
            let faces = if q == 0 {
                Vec::new()
            } else {
                (0..=q)
                    .map(|f| {
                        let ds = z.level(*n).face(f, s);
                        class[q - 1][lookup[q - 1][&(*n, a.clone(), ds)]].clone()
                    })
                    .collect()
            };
            let name = format!("[{}|{}]", k.display_simplex(a), z.level(*n).display_simplex(s));
            let id = builder.cell(name, q, faces);
            root_ref.insert(root, SimplexRef::cell(id));
        }
        class.push((0..list.len()).map(|i| root_ref[&uf.find(i)].clone()).collect());
        pairs.push(list);
        lookup.push(index);
    }
    let set = builder.build(format!("{}⊗{}", k.name(), z.name), None)?;
    Ok(TensorProduct { set, trunc, pairs, class, lookup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};

    fn point() -> FiniteSimplicialSet {
        build_standard(&BuildKind::Simplex(0)).unwrap()
    }

    #[test]
    fn constant_point_gives_components() {
        let z = CosimplicialSSet::constant(&point(), 2).unwrap();
        let s0 = build_standard(&BuildKind::MinimalSphere(0)).unwrap();
        assert_eq!(tensor_under_delta(&s0, &z, 2).unwrap().set.cell_counts(), vec![2]);
        let tri = build_standard(&BuildKind::Polygon(3)).unwrap();
        assert_eq!(tensor_under_delta(&tri, &z, 2).unwrap().set.cell_counts(), vec![1]);
    }

    #[test]
    fn yoneda_recovers_the_cells() {
        let z = CosimplicialSSet::yoneda(3).unwrap();
        for kind in [BuildKind::MinimalSphere(1), BuildKind::Polygon(3), BuildKind::Simplex(2)] {
            let k = build_standard(&kind).unwrap();
            let t = tensor_under_delta(&k, &z, 3).unwrap();
            let mut counts = k.cell_counts();
            counts.resize(t.set.cell_counts().len(), 0);
            assert_eq!(t.set.cell_counts(), counts, "{kind:?}");
        }
    }

    #[test]
    fn short_truncation_is_reported() {
        let z = CosimplicialSSet::yoneda(1).unwrap();
        let k = build_standard(&BuildKind::Simplex(2)).unwrap();
        assert!(matches!(tensor_under_delta(&k, &z, 1), Err(Error::Truncation(_))));
    }
}
