use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sset::{build_standard, BuildKind, FiniteSimplicialSet, SimplexRef, SimplicialMap};

/// A cosimplicial simplicial set stored up to level `trunc`.
///
/// `cofaces[p][i]` is `d^i: Z[p-1] → Z[p]` for `p ≥ 1`, and
/// `codegeneracies[p][j]` is `s^j: Z[p+1] → Z[p]` for `p < trunc`.
#[derive(Clone, Debug)]
pub struct CosimplicialSSet {
    pub name: String,
    pub levels: Vec<FiniteSimplicialSet>,
    pub cofaces: Vec<Vec<SimplicialMap>>,
    pub codegeneracies: Vec<Vec<SimplicialMap>>,
}

/// Vertex indices of a simplex of `Δ[n]`, in order, with repetitions.
fn simplex_vertices(k: &FiniteSimplicialSet, s: &SimplexRef) -> Vec<usize> {
    (0..=k.level(s))
        .map(|i| k.dim_position(k.apply_unchecked(&[i], s).cell))
        .collect()
}

/// `Δ[p] → Δ[q]` induced by a monotone `φ: [p] → [q]`.
pub(crate) fn simplex_map(source: &FiniteSimplicialSet, target: &FiniteSimplicialSet, phi: &[usize]) -> Result<SimplicialMap> {
    let by_vertices: HashMap<Vec<usize>, usize> = (0..target.num_cells())
        .map(|c| (simplex_vertices(target, &SimplexRef::cell(c)), c))
        .collect();
    let images = (0..source.num_cells())
        .map(|c| {
            let image: Vec<usize> = simplex_vertices(source, &SimplexRef::cell(c)).iter().map(|&v| phi[v]).collect();
            let mut distinct = image.clone();
            distinct.dedup();
            let psi: Vec<usize> = image.iter().map(|v| distinct.iter().position(|d| d == v).unwrap()).collect();
            SimplexRef::from_surjection(by_vertices[&distinct], &psi)
        })
        .collect();
    SimplicialMap::new(source.clone(), target.clone(), images)
}

impl CosimplicialSSet {
    pub fn new(
        name: impl Into<String>,
        levels: Vec<FiniteSimplicialSet>,
        cofaces: Vec<Vec<SimplicialMap>>,
        codegeneracies: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self> {
        let z = CosimplicialSSet { name: name.into(), levels, cofaces, codegeneracies };
        z.check_shape()?;
        z.check_identities()?;
        Ok(z)
    }

    /// `Z[p] = Δ[p]` with the standard coface and codegeneracy maps.
    pub fn yoneda(trunc: usize) -> Result<Self> {
        let levels: Vec<FiniteSimplicialSet> =
            (0..=trunc).map(|p| build_standard(&BuildKind::Simplex(p))).collect::<Result<_>>()?;
        let mut cofaces = vec![Vec::new()];
        let mut codegeneracies = Vec::new();
        for p in 1..=trunc {
            let ds = (0..=p)
                .map(|i| {
                    let phi: Vec<usize> = (0..p).map(|t| if t < i { t } else { t + 1 }).collect();
                    simplex_map(&levels[p - 1], &levels[p], &phi)
                })
                .collect::<Result<_>>()?;
            cofaces.push(ds);
        }
        for p in 0..trunc {
            let ss = (0..=p)
                .map(|j| {
                    let phi: Vec<usize> = (0..=p + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
                    simplex_map(&levels[p + 1], &levels[p], &phi)
                })
                .collect::<Result<_>>()?;
            codegeneracies.push(ss);
        }
        Self::new("yoneda", levels, cofaces, codegeneracies)
    }

    /// Every level `y`, every operator the identity.
    pub fn constant(y: &FiniteSimplicialSet, trunc: usize) -> Result<Self> {
        let id = SimplicialMap::identity(y);
        let cofaces = (0..=trunc).map(|p| if p == 0 { Vec::new() } else { vec![id.clone(); p + 1] }).collect();
        let codegeneracies = (0..trunc).map(|p| vec![id.clone(); p + 1]).collect();
        Self::new(format!("constant({})", y.name()), vec![y.clone(); trunc + 1], cofaces, codegeneracies)
    }

    pub fn trunc(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize) -> &FiniteSimplicialSet {
        &self.levels[p]
    }

    pub fn coface(&self, p: usize, i: usize) -> &SimplicialMap {
        &self.cofaces[p][i]
    }

    pub fn codegeneracy(&self, p: usize, j: usize) -> &SimplicialMap {
        &self.codegeneracies[p][j]
    }

    fn check_shape(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::InvalidParameter("a cosimplicial object needs level 0".into()));
        }
        let t = self.trunc();
        let bad = |what: &str| Err(Error::Malformed(format!("{}: {what}", self.name)));
        if self.cofaces.len() != t + 1 || self.codegeneracies.len() != t {
            return bad("operator tables do not match the stored levels");
        }
        for p in 1..=t {
            if self.cofaces[p].len() != p + 1 {
                return bad("wrong number of cofaces");
            }
            for d in &self.cofaces[p] {
                if d.source() != &self.levels[p - 1] || d.target() != &self.levels[p] {
                    return bad("coface between the wrong levels");
                }
            }
        }
        for p in 0..t {
            if self.codegeneracies[p].len() != p + 1 {
                return bad("wrong number of codegeneracies");
            }
            for s in &self.codegeneracies[p] {
                if s.source() != &self.levels[p + 1] || s.target() != &self.levels[p] {
                    return bad("codegeneracy between the wrong levels");
                }
            }
        }
        Ok(())
    }

    /// Checks the cosimplicial identities on every stored level.
    pub fn check_identities(&self) -> Result<()> {
        check_cosimplicial(
            self.trunc(),
            |p, i| self.cofaces[p][i].clone(),
            |p, j| self.codegeneracies[p][j].clone(),
            |a, b| a.compose(b).expect("composable levels"),
            |p| SimplicialMap::identity(&self.levels[p]),
        )
        .map_err(|e| Error::Malformed(format!("{}: {e}", self.name)))
    }
}

/// Checks the cosimplicial identities for operators stored up to level `t`.
/// `coface(p, i): level p-1 → p`, `codeg(p, j): level p+1 → p`,
/// `compose(a, b) = a ∘ b`.
pub(crate) fn check_cosimplicial<T: PartialEq>(
    t: usize,
    coface: impl Fn(usize, usize) -> T,
    codeg: impl Fn(usize, usize) -> T,
    compose: impl Fn(&T, &T) -> T,
    identity: impl Fn(usize) -> T,
) -> std::result::Result<(), String> {
    // d^j d^i = d^i d^{j-1} for i < j
    for n in 1..t {
        for j in 1..=n + 1 {
            for i in 0..j {
                if compose(&coface(n + 1, j), &coface(n, i)) != compose(&coface(n + 1, i), &coface(n, j - 1)) {
                    return Err(format!("d^{j} d^{i} ≠ d^{i} d^{} at level {n}", j - 1));
                }
            }
        }
    }
    // s^j d^i on Z[n] → Z[n]
    for n in 0..t {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = compose(&codeg(n, j), &coface(n + 1, i));
                let rhs = if i < j {
                    compose(&coface(n, i), &codeg(n - 1, j - 1))
                } else if i == j || i == j + 1 {
                    identity(n)
                } else {
                    compose(&coface(n, i - 1), &codeg(n - 1, j))
                };
                if lhs != rhs {
                    return Err(format!("s^{j} d^{i} identity fails at level {n}"));
                }
            }
        }
    }
    // s^j s^i = s^i s^{j+1} for i ≤ j
    for n in 0..t.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                if compose(&codeg(n, j), &codeg(n + 1, i)) != compose(&codeg(n, i), &codeg(n + 1, j + 1)) {
                    return Err(format!("s^{j} s^{i} ≠ s^{i} s^{} at level {n}", j + 1));
                }
            }
        }
    }
    Ok(())
}

/// The cosimplicial set `X^K`: level `p` is the set of functions `K_p → X`
/// for a finite set `X = {0, …, size-1}`, stored as value lists in the
/// order of `K.level_simplices(p)`.
#[derive(Clone, Debug)]
pub struct MappingCosimplicialSet {
    pub size: usize,
    pub trunc: usize,
    pub level_lengths: Vec<usize>,
    face_tables: Vec<Vec<Vec<usize>>>,
    degeneracy_tables: Vec<Vec<Vec<usize>>>,
}

pub fn mapping_cosimplicial_set(k: &FiniteSimplicialSet, size: usize, trunc: usize) -> Result<MappingCosimplicialSet> {
    let levels: Vec<Vec<SimplexRef>> = (0..=trunc).map(|p| k.level_simplices(p)).collect();
    let index: Vec<HashMap<&SimplexRef, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    // d^i f = f ∘ d_i: entry t of the table is the index of d_i of simplex t
    let face_tables = (0..=trunc)
        .map(|p| {
            if p == 0 {
                return Vec::new();
            }
            (0..=p).map(|i| levels[p].iter().map(|s| index[p - 1][&k.face(i, s)]).collect()).collect()
        })
        .collect();
    let degeneracy_tables = (0..trunc)
        .map(|p| (0..=p).map(|j| levels[p].iter().map(|s| index[p + 1][&k.degeneracy(j, s)]).collect()).collect())
        .collect();
    let level_lengths: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    for &n in &level_lengths {
        if (n as f64) * (size.max(1) as f64).log2() > 24.0 {
            return Err(Error::Resource(format!("{size}^{n} functions at one level")));
        }
    }
    Ok(MappingCosimplicialSet { size, trunc, level_lengths, face_tables, degeneracy_tables })
}

impl MappingCosimplicialSet {
    pub fn level_size(&self, p: usize) -> usize {
        self.size.pow(self.level_lengths[p] as u32)
    }

    /// All elements of level `p`.
    pub fn elements(&self, p: usize) -> Vec<Vec<usize>> {
        let n = self.level_lengths[p];
        (0..self.level_size(p))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % self.size;
                        code /= self.size;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// `d^i: X^K[p-1] → X^K[p]`.
    pub fn coface(&self, p: usize, i: usize, f: &[usize]) -> Vec<usize> {
        self.face_tables[p][i].iter().map(|&t| f[t]).collect()
    }

    /// `s^j: X^K[p+1] → X^K[p]`.
    pub fn codegeneracy(&self, p: usize, j: usize, f: &[usize]) -> Vec<usize> {
        self.degeneracy_tables[p][j].iter().map(|&t| f[t]).collect()
    }

    fn encode(&self, f: &[usize]) -> usize {
        f.iter().rev().fold(0, |acc, &v| acc * self.size + v)
    }

    /// Checks the cosimplicial identities exhaustively: each operator is
    /// tabulated as a function between the full element sets.
    pub fn check_identities(&self) -> Result<()> {
        let elements: Vec<Vec<Vec<usize>>> = (0..=self.trunc).map(|p| self.elements(p)).collect();
        check_cosimplicial(
            self.trunc,
            |p, i| elements[p - 1].iter().map(|f| self.encode(&self.coface(p, i, f))).collect::<Vec<usize>>(),
            |p, j| elements[p + 1].iter().map(|f| self.encode(&self.codegeneracy(p, j, f))).collect(),
            |a, b| b.iter().map(|&t| a[t]).collect(),
            |p| (0..elements[p].len()).collect(),
        )
        .map_err(Error::Malformed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yoneda_and_constant_satisfy_identities() {
        let z = CosimplicialSSet::yoneda(3).unwrap();
        assert_eq!(z.level(2).cell_counts(), vec![3, 3, 1]);
        let pt = build_standard(&BuildKind::Simplex(0)).unwrap();
        CosimplicialSSet::constant(&pt, 3).unwrap();
    }

    #[test]
    fn broken_operators_are_rejected() {
        let mut z = CosimplicialSSet::yoneda(2).unwrap();
        z.cofaces[2].swap(0, 1);
        assert!(z.check_identities().is_err());
    }

    #[test]
    fn mapping_set_level_sizes() {
        let pt = build_standard(&BuildKind::Simplex(0)).unwrap();
        let m = mapping_cosimplicial_set(&pt, 3, 4).unwrap();
        assert!((0..=4).all(|p| m.level_size(p) == 3));
        let s1 = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
        let m = mapping_cosimplicial_set(&s1, 2, 3).unwrap();
        for p in 0..=3 {
            assert_eq!(m.level_size(p), 1 << (p + 1));
            assert_eq!(m.elements(p).len(), 1 << (p + 1));
        }
        m.check_identities().unwrap();
    }
}
