//! Simplicial maps and finite group actions.

use super::homology::homology;
use super::{FiniteSimplicialSet, SimplexRef};
use crate::chains::{Field, SparseVec};
use crate::error::{Error, Result};
use crate::grepr::GroupData;

/// A simplicial map given by the images of the nondegenerate cells.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialMap {
    source: FiniteSimplicialSet,
    target: FiniteSimplicialSet,
    images: Vec<SimplexRef>,
}

impl SimplicialMap {
    pub fn new(source: FiniteSimplicialSet, target: FiniteSimplicialSet, images: Vec<SimplexRef>) -> Result<Self> {
        if images.len() != source.num_cells() {
            return Err(Error::Malformed(format!(
                "map from {} needs {} cell images, got {}",
                source.name(),
                source.num_cells(),
                images.len()
            )));
        }
        for (c, img) in images.iter().enumerate() {
            let cell = source.cell(c);
            if img.cell >= target.num_cells() || target.level(img) != cell.dim {
                return Err(Error::Malformed(format!(
                    "image of `{}` is not a {}-simplex of {}",
                    cell.name,
                    cell.dim,
                    target.name()
                )));
            }
        }
        let m = SimplicialMap { source, target, images };
        for (c, cell) in m.source.cells().iter().enumerate() {
            for (i, f) in cell.faces.iter().enumerate() {
                if m.target.face(i, &m.images[c]) != m.apply(f) {
                    return Err(Error::Malformed(format!("map does not commute with d_{i} on `{}`", cell.name)));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(k: &FiniteSimplicialSet) -> Self {
        let images = (0..k.num_cells()).map(SimplexRef::cell).collect();
        SimplicialMap { source: k.clone(), target: k.clone(), images }
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSimplicialSet {
        &self.target
    }

    pub fn images(&self) -> &[SimplexRef] {
        &self.images
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        s.degens
            .iter()
            .rev()
            .fold(self.images[s.cell].clone(), |acc, &j| self.target.degeneracy(j, &acc))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("maps are not composable".into()));
        }
        let images = other.images.iter().map(|s| self.apply(s)).collect();
        Ok(SimplicialMap { source: other.source.clone(), target: self.target.clone(), images })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(c, s)| s.cell == c && s.degens.is_empty())
    }

    pub fn preserves_basepoint(&self) -> bool {
        match (self.source.basepoint(), self.target.basepoint()) {
            (Some(a), Some(b)) => self.images[a] == SimplexRef::cell(b),
            _ => true,
        }
    }

    /// The induced map on normalized chains in degree `n`: a cell goes to its
    /// image when that is nondegenerate, to zero otherwise.
    pub fn chain_map<F: Field>(&self, field: &F, n: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let cells = self.source.cells_of_dim(n);
        SparseVec::from_pairs(
            field,
            v.iter().filter_map(|(i, x)| {
                let img = &self.images[cells[*i]];
                (!img.is_degenerate()).then(|| (self.target.dim_position(img.cell), x.clone()))
            }),
        )
    }
}

/// A group acting on `K` by simplicial automorphisms, one map per element.
#[derive(Clone, Debug)]
pub struct SimplicialGroupAction {
    pub group: GroupData,
    pub maps: Vec<SimplicialMap>,
}

impl SimplicialGroupAction {
    pub fn trivial(k: &FiniteSimplicialSet) -> Self {
        SimplicialGroupAction { group: GroupData::trivial(), maps: vec![SimplicialMap::identity(k)] }
    }

    /// The action generated by one automorphism of finite order `n`.
    pub fn cyclic(generator: SimplicialMap, n: usize) -> Result<Self> {
        let group = GroupData::cyclic(n)?;
        let mut maps = vec![SimplicialMap::identity(generator.source())];
        for i in 1..n {
            maps.push(generator.compose(&maps[i - 1])?);
        }
        Ok(SimplicialGroupAction { group, maps })
    }

    pub fn space(&self) -> &FiniteSimplicialSet {
        self.maps[0].source()
    }

    /// Image of a simplex under group element `g`.
    pub fn act(&self, g: usize, s: &SimplexRef) -> SimplexRef {
        self.maps[g].apply(s)
    }
}

/// The outcome of validating an action: matrices of every element on
/// `H_n(K)` for each `n ≤ dim K` (columns are images of representatives).
#[derive(Clone, Debug)]
pub struct ActionReport<E> {
    pub homology_dims: Vec<usize>,
    pub matrices: Vec<Vec<Vec<Vec<E>>>>,
}

pub fn validate_action<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    action: &SimplicialGroupAction,
) -> Result<ActionReport<F::Elem>> {
    let g = &action.group;
    if action.maps.len() != g.order() {
        return Err(Error::Group(format!(
            "{} maps given for a group of order {}",
            action.maps.len(),
            g.order()
        )));
    }
    for (i, m) in action.maps.iter().enumerate() {
        if m.source() != k || m.target() != k {
            return Err(Error::Group(format!("map of `{}` is not an endomorphism of {}", g.names()[i], k.name())));
        }
        if k.is_pointed() && !m.preserves_basepoint() {
            return Err(Error::Group(format!("`{}` moves the basepoint", g.names()[i])));
        }
    }
    if !action.maps[g.identity()].is_identity() {
        return Err(Error::Group("the identity element does not act as the identity".into()));
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            let composed = action.maps[a].compose(&action.maps[b])?;
            if composed.images() != action.maps[g.mul(a, b)].images() {
                return Err(Error::Group(format!(
                    "action of `{}` after `{}` differs from the action of their product `{}`",
                    g.names()[a],
                    g.names()[b],
                    g.names()[g.mul(a, b)]
                )));
            }
        }
    }
    let h = homology(field, k)?;
    let matrices = (0..=k.dim())
        .map(|n| {
            action
                .maps
                .iter()
                .map(|m| h.groups[n].induced_matrix(field, |v| m.chain_map(field, n, v)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionReport { homology_dims: h.dims.clone(), matrices })
}

/// The rotation `v_i ↦ v_{i+1}` of `polygon(m)`, generating `ℤ/m`.
pub fn polygon_rotation(m: usize) -> Result<SimplicialGroupAction> {
    let k = super::build_standard(&super::BuildKind::Polygon(m))?;
    let v = k.cells_of_dim(0).to_vec();
    let e = k.cells_of_dim(1).to_vec();
    let mut images = vec![SimplexRef::cell(0); k.num_cells()];
    for i in 0..m {
        images[v[i]] = SimplexRef::cell(v[(i + 1) % m]);
        images[e[i]] = SimplexRef::cell(e[(i + 1) % m]);
    }
    SimplicialGroupAction::cyclic(SimplicialMap::new(k.clone(), k, images)?, m)
}

/// The reflection `v_i ↦ v_{-i}` of `zigzag(m)`, generating `ℤ/2`.
pub fn zigzag_reflection(m: usize) -> Result<SimplicialGroupAction> {
    let k = super::build_standard(&super::BuildKind::Zigzag(m))?;
    let v = k.cells_of_dim(0).to_vec();
    let e = k.cells_of_dim(1).to_vec();
    let mut images = vec![SimplexRef::cell(0); k.num_cells()];
    for i in 0..m {
        images[v[i]] = SimplexRef::cell(v[(m - i) % m]);
        images[e[i]] = SimplexRef::cell(e[(2 * m - i - 1) % m]);
    }
    SimplicialGroupAction::cyclic(SimplicialMap::new(k.clone(), k, images)?, 2)
}

/// `ℤ/n` cyclically permuting the summands of a wedge of `n` minimal `d`-spheres.
pub fn wedge_cycle(n: usize, d: usize) -> Result<SimplicialGroupAction> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter("wedge permutation needs n ≥ 1 spheres of dimension ≥ 1".into()));
    }
    let k = super::build_standard(&super::BuildKind::Wedge(vec![super::BuildKind::MinimalSphere(d); n]))?;
    let mut images: Vec<SimplexRef> = (0..k.num_cells()).map(SimplexRef::cell).collect();
    for i in 0..n {
        let from = k.lookup(&format!("{i}.c")).expect("wedge summand cell");
        let to = k.lookup(&format!("{}.c", (i + 1) % n)).expect("wedge summand cell");
        images[from] = SimplexRef::cell(to);
    }
    SimplicialGroupAction::cyclic(SimplicialMap::new(k.clone(), k, images)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Rationals;
    use crate::sset::{build_standard, BuildKind};

    fn rotation(m: usize) -> SimplicialMap {
        polygon_rotation(m).unwrap().maps[1].clone()
    }

    fn reflection() -> SimplicialMap {
        zigzag_reflection(4).unwrap().maps[1].clone()
    }

    #[test]
    fn rotation_acts_trivially_on_homology() {
        let f = Rationals;
        let r = rotation(3);
        let k = r.source().clone();
        let act = SimplicialGroupAction::cyclic(r, 3).unwrap();
        let rep = validate_action(&f, &k, &act).unwrap();
        assert_eq!(rep.homology_dims, vec![1, 1]);
        for m in &rep.matrices[1] {
            assert_eq!(m, &vec![vec![f.one()]]);
        }
    }

    #[test]
    fn reflection_negates_the_loop() {
        let f = Rationals;
        let r = reflection();
        let k = r.source().clone();
        let act = SimplicialGroupAction::cyclic(r, 2).unwrap();
        let rep = validate_action(&f, &k, &act).unwrap();
        assert_eq!(rep.matrices[1][1], vec![vec![f.from_i64(-1)]]);
    }

    #[test]
    fn bad_composition_table_is_named() {
        let f = Rationals;
        let r = rotation(4);
        let k = r.source().clone();
        let mut act = SimplicialGroupAction::cyclic(r, 4).unwrap();
        act.maps.swap(1, 2);
        match validate_action(&f, &k, &act).unwrap_err() {
            Error::Group(msg) => assert!(msg.contains("`g`"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = SimplicialGroupAction {
            group: GroupData::cyclic(2).unwrap(),
            maps: vec![rotation(4), SimplicialMap::identity(&k)],
        };
        assert!(validate_action(&f, &k, &bad).is_err());
    }

    #[test]
    fn wedge_permutation_is_valid() {
        let act = wedge_cycle(3, 1).unwrap();
        let k = act.space().clone();
        let rep = validate_action(&Rationals, &k, &act).unwrap();
        assert_eq!(rep.homology_dims, vec![1, 3]);
    }

    #[test]
    fn non_simplicial_images_are_rejected() {
        let k = build_standard(&BuildKind::Polygon(3)).unwrap();
        let v = k.cells_of_dim(0).to_vec();
        let e = k.cells_of_dim(1).to_vec();
        let mut images: Vec<SimplexRef> = (0..k.num_cells()).map(SimplexRef::cell).collect();
        images[v[0]] = SimplexRef::cell(v[1]);
        images[e[0]] = SimplexRef::cell(e[0]);
        assert!(SimplicialMap::new(k.clone(), k, images).is_err());
    }
}
