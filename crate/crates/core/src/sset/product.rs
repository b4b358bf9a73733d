//! Products, pushouts along face-closed subsets, quotients, wedges and smash products.

use std::collections::{BTreeSet, HashMap};

use super::action::SimplicialMap;
use super::{CellId, FiniteSimplicialSet, SSetBuilder, SimplexRef};
use crate::error::{Error, Result};

/// Cap on the number of nondegenerate cells of an enumerated product.
pub const MAX_PRODUCT_CELLS: usize = 400_000;

/// An n-fold product together with the coordinates of each of its cells.
#[derive(Clone, Debug)]
pub struct ProductSet {
    pub set: FiniteSimplicialSet,
    pub factors: Vec<FiniteSimplicialSet>,
    /// Coordinates of every nondegenerate cell, all at the level of the cell.
    pub tuples: Vec<Vec<SimplexRef>>,
    index: HashMap<Vec<SimplexRef>, CellId>,
}

fn collapse(s: &SimplexRef) -> BTreeSet<usize> {
    s.degens.iter().copied().collect()
}

/// Splits a tuple of simplices at a common level into its common degeneracy
/// word and the reduced tuple.
fn factor_common(tuple: &[SimplexRef]) -> (Vec<usize>, Vec<SimplexRef>) {
    let mut common = collapse(&tuple[0]);
    for s in &tuple[1..] {
        let c = collapse(s);
        common.retain(|t| c.contains(t));
    }
    if common.is_empty() {
        return (Vec::new(), tuple.to_vec());
    }
    let shift = |t: usize| t - common.iter().filter(|&&c| c < t).count();
    let reduced = tuple
        .iter()
        .map(|s| {
            let degens = s
                .degens
                .iter()
                .filter(|t| !common.contains(t))
                .map(|&t| shift(t))
                .collect();
            SimplexRef { cell: s.cell, degens }
        })
        .collect();
    (common.into_iter().rev().collect(), reduced)
}

impl ProductSet {
    /// Normal form of a tuple of simplices at a common level.
    pub fn normalize(&self, tuple: &[SimplexRef]) -> Result<SimplexRef> {
        let (degens, reduced) = factor_common(tuple);
        let cell = *self.index.get(&reduced).ok_or_else(|| {
            Error::Resource(format!(
                "product cell of dimension {} lies beyond the enumerated range",
                self.factors[0].level(&reduced[0])
            ))
        })?;
        Ok(SimplexRef { cell, degens })
    }

    pub fn lookup(&self, tuple: &[SimplexRef]) -> Option<CellId> {
        self.index.get(tuple).copied()
    }

    /// Coordinates of an arbitrary simplex of the product.
    pub fn coordinates(&self, s: &SimplexRef) -> Vec<SimplexRef> {
        self.tuples[s.cell]
            .iter()
            .zip(&self.factors)
            .map(|(x, k)| degenerate_by(k, &s.degens, x))
            .collect()
    }
}

/// `K × L` with nondegenerate cells up to `dim_bound`.
pub fn product(k: &FiniteSimplicialSet, l: &FiniteSimplicialSet, dim_bound: usize) -> Result<ProductSet> {
    product_many(&[k.clone(), l.clone()], dim_bound)
}

/// The product of all `factors` with nondegenerate cells up to `dim_bound`.
pub fn product_many(factors: &[FiniteSimplicialSet], dim_bound: usize) -> Result<ProductSet> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("product of no factors".into()));
    }
    let top = dim_bound.min(factors.iter().map(|k| k.dim()).sum());
    let mut tuples: Vec<Vec<SimplexRef>> = Vec::new();
    let mut index: HashMap<Vec<SimplexRef>, CellId> = HashMap::new();
    let mut b = SSetBuilder::new();
    for n in 0..=top {
        let levels: Vec<Vec<SimplexRef>> = factors.iter().map(|k| k.level_simplices(n)).collect();
        let mut found = Vec::new();
        let all: BTreeSet<usize> = (0..n).collect();
        let room: Vec<usize> = (0..=factors.len()).map(|i| factors[i..].iter().map(|k| k.dim()).sum()).collect();
        enumerate_tuples(&levels, &room, 0, &mut Vec::new(), all, &mut found)?;
        if tuples.len() + found.len() > MAX_PRODUCT_CELLS {
            return Err(Error::Resource(format!("product has more than {MAX_PRODUCT_CELLS} cells")));
        }
        for t in found {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let face: Vec<SimplexRef> =
                            t.iter().zip(factors).map(|(s, k)| k.face(i, s)).collect();
                        let (degens, reduced) = factor_common(&face);
                        SimplexRef { cell: index[&reduced], degens }
                    })
                    .collect()
            };
            let name = format!(
                "({})",
                t.iter().zip(factors).map(|(s, k)| k.display_simplex(s)).collect::<Vec<_>>().join(",")
            );
            let id = b.cell(name, n, faces);
            index.insert(t.clone(), id);
            tuples.push(t);
        }
    }
    let basepoint = factors
        .iter()
        .map(|k| k.basepoint().map(SimplexRef::cell))
        .collect::<Option<Vec<_>>>()
        .and_then(|t| index.get(&t).copied());
    let name = factors.iter().map(|k| k.name().to_string()).collect::<Vec<_>>().join("×");
    let set = b.build(name, basepoint)?;
    Ok(ProductSet { set, factors: factors.to_vec(), tuples, index })
}

fn enumerate_tuples(
    levels: &[Vec<SimplexRef>],
    room: &[usize],
    i: usize,
    current: &mut Vec<SimplexRef>,
    common: BTreeSet<usize>,
    out: &mut Vec<Vec<SimplexRef>>,
) -> Result<()> {
    if i == levels.len() {
        if common.is_empty() {
            out.push(current.clone());
            if out.len() > MAX_PRODUCT_CELLS {
                return Err(Error::Resource(format!("product has more than {MAX_PRODUCT_CELLS} cells")));
            }
        }
        return Ok(());
    }
    // each remaining factor clears at most its dimension from the common collapse set
    if common.len() > room[i] {
        return Ok(());
    }
    for s in &levels[i] {
        let next: BTreeSet<usize> = common.iter().copied().filter(|t| s.degens.contains(t)).collect();
        current.push(s.clone());
        enumerate_tuples(levels, room, i + 1, current, next, out)?;
        current.pop();
    }
    Ok(())
}

/// The result of gluing: where the old cells went.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub set: FiniteSimplicialSet,
    /// New id of every cell of `X` outside the glued subset.
    pub from_x: Vec<Option<CellId>>,
    /// New id of every cell of `Y`.
    pub from_y: Vec<CellId>,
}

impl Pushout {
    /// Image of a simplex of `X` in the pushout; cells of the glued subset go through `g`.
    pub fn image_of(&self, g: &[Option<SimplexRef>], s: &SimplexRef) -> SimplexRef {
        match self.from_x[s.cell] {
            Some(c) => SimplexRef { cell: c, degens: s.degens.clone() },
            None => {
                let base = g[s.cell].clone().expect("glued cell has an image");
                let base = SimplexRef { cell: self.from_y[base.cell], degens: base.degens };
                degenerate_by(&self.set, &s.degens, &base)
            }
        }
    }
}

/// Applies a normal-form degeneracy word (decreasing) to `s`.
fn degenerate_by(k: &FiniteSimplicialSet, degens: &[usize], s: &SimplexRef) -> SimplexRef {
    degens.iter().rev().fold(s.clone(), |acc, &j| k.degeneracy(j, &acc))
}

fn check_face_closed(x: &FiniteSimplicialSet, sub: &BTreeSet<CellId>) -> Result<()> {
    for &c in sub {
        if c >= x.num_cells() {
            return Err(Error::InvalidParameter(format!("cell {c} does not exist in {}", x.name())));
        }
        for f in &x.cell(c).faces {
            if !sub.contains(&f.cell) {
                return Err(Error::InvalidParameter(format!(
                    "collapse set is not closed under faces: `{}` has face `{}` outside it",
                    x.cell(c).name,
                    x.cell(f.cell).name
                )));
            }
        }
    }
    Ok(())
}

/// `X ∪_A Y` for a face-closed `A ⊆ X` and a simplicial map `g: A → Y`
/// given by the images of the cells of `A` (`None` off `A`).
pub fn pushout(
    x: &FiniteSimplicialSet,
    sub: &BTreeSet<CellId>,
    y: &FiniteSimplicialSet,
    g: &[Option<SimplexRef>],
    basepoint: Option<CellId>,
) -> Result<Pushout> {
    check_face_closed(x, sub)?;
    if g.len() != x.num_cells() || sub.iter().any(|&c| g[c].is_none()) {
        return Err(Error::InvalidParameter("gluing map must be given on every collapsed cell".into()));
    }
    for &c in sub {
        let img = g[c].as_ref().unwrap();
        if y.level(img) != x.cell_dim(c) {
            return Err(Error::DimensionMismatch(format!("gluing image of `{}` has the wrong dimension", x.cell(c).name)));
        }
        for (i, f) in x.cell(c).faces.iter().enumerate() {
            let lhs = y.face(i, img);
            let rhs = degenerate_by(y, &f.degens, g[f.cell].as_ref().unwrap());
            if lhs != rhs {
                return Err(Error::InvalidParameter(format!(
                    "gluing map does not commute with d_{i} on `{}`",
                    x.cell(c).name
                )));
            }
        }
    }
    let mut b = SSetBuilder::new();
    let from_y: Vec<CellId> = y
        .cells()
        .iter()
        .map(|c| b.cell(c.name.clone(), c.dim, c.faces.clone()))
        .collect();
    let mut from_x = vec![None; x.num_cells()];
    let mut next = y.num_cells();
    for c in 0..x.num_cells() {
        if !sub.contains(&c) {
            from_x[c] = Some(next);
            next += 1;
        }
    }
    for (c, cell) in x.cells().iter().enumerate() {
        if sub.contains(&c) {
            continue;
        }
        let faces = cell
            .faces
            .iter()
            .map(|f| match from_x[f.cell] {
                Some(nc) => SimplexRef { cell: nc, degens: f.degens.clone() },
                None => degenerate_by(y, &f.degens, g[f.cell].as_ref().unwrap()),
            })
            .collect();
        let name = if y.lookup(&cell.name).is_some() { format!("{}'", cell.name) } else { cell.name.clone() };
        b.cell(name, cell.dim, faces);
    }
    let set = b.build(x.name().to_string(), basepoint)?;
    Ok(Pushout { set, from_x, from_y })
}

/// `K / A`: all simplices of the face-closed subset `A` become the basepoint.
/// With `A` empty a disjoint basepoint is added.
pub fn quotient(k: &FiniteSimplicialSet, collapse: &BTreeSet<CellId>) -> Result<Pushout> {
    let mut b = SSetBuilder::new();
    let star = b.vertex("*");
    let point = b.build("*", Some(star))?;
    let g: Vec<Option<SimplexRef>> = (0..k.num_cells())
        .map(|c| collapse.contains(&c).then(|| point.degenerate_vertex(star, k.cell_dim(c))))
        .collect();
    let mut po = pushout(k, collapse, &point, &g, Some(0))?;
    po.set = po.set.with_name(format!("{}/~", k.name()));
    Ok(po)
}

/// Disjoint union, with cell names prefixed by the summand index.
pub fn disjoint_union(parts: &[FiniteSimplicialSet]) -> Result<(FiniteSimplicialSet, Vec<usize>)> {
    let mut b = SSetBuilder::new();
    let mut offsets = Vec::new();
    let mut offset = 0;
    for (i, k) in parts.iter().enumerate() {
        offsets.push(offset);
        for c in k.cells() {
            let faces = c.faces.iter().map(|f| SimplexRef { cell: f.cell + offset, degens: f.degens.clone() }).collect();
            b.cell(format!("{i}.{}", c.name), c.dim, faces);
        }
        offset += k.num_cells();
    }
    let name = parts.iter().map(|k| k.name().to_string()).collect::<Vec<_>>().join("+");
    Ok((b.build(name, None)?, offsets))
}

/// Wedge of pointed simplicial sets.
pub fn wedge(parts: &[FiniteSimplicialSet]) -> Result<FiniteSimplicialSet> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("wedge of no spaces".into()));
    }
    let (u, offsets) = disjoint_union(parts)?;
    let mut points = BTreeSet::new();
    for (k, off) in parts.iter().zip(&offsets) {
        let bp = k
            .basepoint()
            .ok_or_else(|| Error::InvalidParameter(format!("{} has no basepoint", k.name())))?;
        points.insert(bp + off);
    }
    let name = parts.iter().map(|k| k.name().to_string()).collect::<Vec<_>>().join("∨");
    Ok(quotient(&u, &points)?.set.with_name(name))
}

/// `K ∧ L = (K × L) / (K ∨ L)`, remembering the product it came from.
#[derive(Clone, Debug)]
pub struct SmashSet {
    pub set: FiniteSimplicialSet,
    pub product: ProductSet,
    /// Cell of the smash product for every product cell off the wedge.
    pub from_product: Vec<Option<CellId>>,
}

pub fn smash(k: &FiniteSimplicialSet, l: &FiniteSimplicialSet) -> Result<SmashSet> {
    let (Some(bk), Some(bl)) = (k.basepoint(), l.basepoint()) else {
        return Err(Error::InvalidParameter("smash product needs pointed factors".into()));
    };
    let prod = product(k, l, k.dim() + l.dim())?;
    let wedge_cells: BTreeSet<CellId> = prod
        .tuples
        .iter()
        .enumerate()
        .filter(|(_, t)| t[0].cell == bk || t[1].cell == bl)
        .map(|(i, _)| i)
        .collect();
    let q = quotient(&prod.set, &wedge_cells)?;
    let set = q.set.with_name(format!("{}∧{}", k.name(), l.name()));
    Ok(SmashSet { set, product: prod, from_product: q.from_x })
}

/// The coordinate switch on `K ∧ K` as a simplicial automorphism.
pub fn switch_action(s: &SmashSet) -> Result<SimplicialMap> {
    if s.product.factors[0] != s.product.factors[1] {
        return Err(Error::InvalidParameter("switch needs equal factors".into()));
    }
    // the collapsed wedge is cell 0 and stays fixed
    let mut images = vec![SimplexRef::cell(0); s.set.num_cells()];
    for (pc, t) in s.product.tuples.iter().enumerate() {
        if let Some(c) = s.from_product[pc] {
            let swapped = s.product.lookup(&[t[1].clone(), t[0].clone()]).expect("swapped cell exists");
            let target = s.from_product[swapped].expect("swap preserves the wedge");
            images[c] = SimplexRef::cell(target);
        }
    }
    SimplicialMap::new(s.set.clone(), s.set.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};

    #[test]
    fn square_has_expected_counts() {
        let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
        let p = product(&d1, &d1, 2).unwrap();
        assert_eq!(p.set.cell_counts(), vec![4, 5, 2]);
    }

    #[test]
    fn product_with_point_is_the_factor() {
        let pt = build_standard(&BuildKind::Simplex(0)).unwrap();
        let tri = build_standard(&BuildKind::Polygon(3)).unwrap();
        let p = product(&tri, &pt, 2).unwrap();
        assert_eq!(p.set.cell_counts(), vec![3, 3]);
        let s2 = build_standard(&BuildKind::MinimalSphere(2)).unwrap();
        let p = product(&pt, &s2, 1).unwrap();
        assert_eq!(p.set.cell_counts(), vec![1]);
    }

    #[test]
    fn interval_mod_boundary_is_a_circle() {
        let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
        let ends: BTreeSet<CellId> = d1.cells_of_dim(0).iter().copied().collect();
        let s = quotient(&d1, &ends).unwrap().set;
        assert_eq!(s.cell_counts(), vec![1, 1]);
        let e = SimplexRef::cell(s.cells_of_dim(1)[0]);
        assert_eq!(s.face(0, &e), SimplexRef::cell(0));
        assert_eq!(s.face(1, &e), SimplexRef::cell(0));
    }

    #[test]
    fn quotient_by_basepoint_only_keeps_counts() {
        let k = build_standard(&BuildKind::Moore1(3)).unwrap();
        let bp: BTreeSet<CellId> = [k.basepoint().unwrap()].into();
        let q = quotient(&k, &bp).unwrap().set;
        assert_eq!(q.cell_counts(), k.cell_counts());
        let plus = quotient(&k, &BTreeSet::new()).unwrap().set;
        assert_eq!(plus.cell_counts()[0], k.cell_counts()[0] + 1);
    }

    #[test]
    fn quotient_rejects_open_sets() {
        let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
        let edge: BTreeSet<CellId> = [d1.cells_of_dim(1)[0]].into();
        assert!(quotient(&d1, &edge).is_err());
    }

    #[test]
    fn smash_of_circles_is_a_two_sphere_up_to_cells() {
        let s1 = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
        let sm = smash(&s1, &s1).unwrap();
        assert_eq!(sm.set.cell_counts(), vec![1, 1, 2]);
        let sw = switch_action(&sm).unwrap();
        assert!(sw.compose(&sw).unwrap().is_identity());
    }

    #[test]
    fn normal_form_of_degenerate_tuples() {
        let d1 = build_standard(&BuildKind::Simplex(1)).unwrap();
        let p = product(&d1, &d1, 2).unwrap();
        let e = SimplexRef::cell(d1.cells_of_dim(1)[0]);
        let se = d1.degeneracy(0, &e);
        let nf = p.normalize(&[se.clone(), se]).unwrap();
        assert_eq!(nf.degens, vec![0]);
        assert_eq!(p.tuples[nf.cell], vec![e.clone(), e]);
    }
}
