use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, SimplexRef, SimplicialMap};

/// Refuses searches whose raw branching exceeds this many leaves.
pub const MAX_HOM_SEARCH: f64 = 1e7;

/// All simplicial maps `source → target`, assigning images to the
/// nondegenerate cells in order of dimension and pruning on faces.
pub fn enumerate_hom(source: &FiniteSimplicialSet, target: &FiniteSimplicialSet) -> Result<Vec<SimplicialMap>> {
    let mut order: Vec<usize> = (0..source.num_cells()).collect();
    order.sort_by_key(|&c| (source.cell_dim(c), c));
    let candidates: Vec<Vec<SimplexRef>> = (0..=source.dim()).map(|d| target.level_simplices(d)).collect();
    let bound: f64 = order.iter().map(|&c| candidates[source.cell_dim(c)].len().max(1) as f64).product();
    if bound > MAX_HOM_SEARCH {
        return Err(Error::Resource(format!(
            "hom({}, {}) search space of {bound:.0} assignments",
            source.name(),
            target.name()
        )));
    }
    let mut images: Vec<Option<SimplexRef>> = vec![None; source.num_cells()];
    let mut out = Vec::new();
    search(source, target, &order, &candidates, 0, &mut images, &mut out)?;
    Ok(out)
}

fn apply_partial(target: &FiniteSimplicialSet, images: &[Option<SimplexRef>], s: &SimplexRef) -> SimplexRef {
    let base = images[s.cell].clone().expect("faces are assigned before cells");
    s.degens.iter().rev().fold(base, |acc, &j| target.degeneracy(j, &acc))
}

fn search(
    source: &FiniteSimplicialSet,
    target: &FiniteSimplicialSet,
    order: &[usize],
    candidates: &[Vec<SimplexRef>],
    at: usize,
    images: &mut Vec<Option<SimplexRef>>,
    out: &mut Vec<SimplicialMap>,
) -> Result<()> {
    let Some(&c) = order.get(at) else {
        let full = images.iter().map(|s| s.clone().expect("all cells assigned")).collect();
        out.push(SimplicialMap::new(source.clone(), target.clone(), full)?);
        return Ok(());
    };
    let cell = source.cell(c);
    let wanted: Vec<SimplexRef> = cell.faces.iter().map(|f| apply_partial(target, images, f)).collect();
    for y in &candidates[cell.dim] {
        if (0..wanted.len()).all(|i| target.face(i, y) == wanted[i]) {
            images[c] = Some(y.clone());
            search(source, target, order, candidates, at + 1, images, out)?;
        }
    }
    images[c] = None;
    Ok(())
}

/// An isomorphism `a → b` if one exists.
pub fn find_isomorphism(a: &FiniteSimplicialSet, b: &FiniteSimplicialSet) -> Result<Option<SimplicialMap>> {
    if a.cell_counts() != b.cell_counts() {
        return Ok(None);
    }
    Ok(enumerate_hom(a, b)?.into_iter().find(|m| {
        let mut hit = vec![false; b.num_cells()];
        m.images().iter().all(|s| !s.is_degenerate() && !std::mem::replace(&mut hit[s.cell], true))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};

    fn std(kind: BuildKind) -> FiniteSimplicialSet {
        build_standard(&kind).unwrap()
    }

    #[test]
    fn small_hom_sets() {
        let pt = std(BuildKind::Simplex(0));
        let s1 = std(BuildKind::MinimalSphere(1));
        assert_eq!(enumerate_hom(&pt, &std(BuildKind::Simplex(1))).unwrap().len(), 2);
        let loops = enumerate_hom(&s1, &s1).unwrap();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().any(|m| m.is_identity()));
        assert_eq!(enumerate_hom(&std(BuildKind::Polygon(3)), &pt).unwrap().len(), 1);
        // Δ[2] → Δ[1] is the set of monotone maps [2] → [1]
        assert_eq!(enumerate_hom(&std(BuildKind::Simplex(2)), &std(BuildKind::Simplex(1))).unwrap().len(), 4);
    }

    #[test]
    fn isomorphisms() {
        let tri = std(BuildKind::Polygon(3));
        assert!(find_isomorphism(&tri, &tri).unwrap().is_some());
        assert!(find_isomorphism(&std(BuildKind::Polygon(4)), &std(BuildKind::Zigzag(4))).unwrap().is_none());
    }
}
