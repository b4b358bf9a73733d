//! Indexing of the simplices of `K_p` that carry a tensor factor.

use std::collections::HashMap;

use crate::chains::shuffle::iterated_degeneracy;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, SimplexRef};

/// Largest level supported by the coverage bitmasks.
pub const MAX_LEVEL: usize = 63;

/// The factor positions at one level: `K_p` in canonical (or reversed)
/// order, minus the degenerate basepoint in pointed mode.
#[derive(Clone, Debug)]
pub struct LevelIndex {
    pub p: usize,
    pub simplices: Vec<SimplexRef>,
    index: HashMap<SimplexRef, usize>,
    /// Bit `j` is set when the simplex is not in the image of `s_j`.
    pub covers: Vec<u64>,
}

impl LevelIndex {
    pub fn new(k: &FiniteSimplicialSet, p: usize, reversed: bool, pointed: bool) -> Result<Self> {
        if p > MAX_LEVEL {
            return Err(Error::Resource(format!("simplicial level {p} exceeds {MAX_LEVEL}")));
        }
        let mut simplices = k.level_simplices(p);
        if pointed {
            let bp = k
                .basepoint()
                .ok_or_else(|| Error::Hypothesis("pointed mapping space needs a pointed source".into()))?;
            let star = k.degenerate_vertex(bp, p);
            simplices.retain(|s| *s != star);
        }
        if reversed {
            simplices.reverse();
        }
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let full = full_mask(p);
        let covers = simplices
            .iter()
            .map(|s| s.degens.iter().fold(full, |m, &j| m & !(1u64 << j)))
            .collect();
        Ok(LevelIndex { p, simplices, index, covers })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Position of a simplex; `None` for the excluded basepoint.
    pub fn position(&self, s: &SimplexRef) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Whether a support is nondegenerate: no `s_j` image contains all of it.
    pub fn admissible(&self, support: impl IntoIterator<Item = usize>) -> bool {
        let m = support.into_iter().fold(0u64, |m, a| m | self.covers[a]);
        m == full_mask(self.p)
    }
}

pub fn full_mask(p: usize) -> u64 {
    if p == 0 {
        0
    } else {
        u64::MAX >> (64 - p)
    }
}

/// `d_i: K_p → K_{p-1}` on factor positions (`None` = lands on the basepoint).
pub fn face_map(k: &FiniteSimplicialSet, from: &LevelIndex, to: &LevelIndex, i: usize) -> Vec<Option<usize>> {
    from.simplices.iter().map(|s| to.position(&k.face(i, s))).collect()
}

/// An iterated degeneracy `K_p → K_{p+r}` (indices applied first to last).
pub fn degeneracy_map(k: &FiniteSimplicialSet, from: &LevelIndex, to: &LevelIndex, idx: &[usize]) -> Vec<usize> {
    from.simplices
        .iter()
        .map(|s| to.position(&iterated_degeneracy(k, idx, s)).expect("degeneracies are injective"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, BuildKind};

    #[test]
    fn circle_levels() {
        let k = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
        let l2 = LevelIndex::new(&k, 2, false, true).unwrap();
        // s_0 c and s_1 c
        assert_eq!(l2.len(), 2);
        assert!(l2.admissible([0, 1]));
        assert!(!l2.admissible([0]));
        let l0 = LevelIndex::new(&k, 0, false, true).unwrap();
        assert!(l0.is_empty());
        assert!(l0.admissible([]));
        let full = LevelIndex::new(&k, 2, true, false).unwrap();
        assert_eq!(full.len(), 3);
    }
}
