//! Homology of finite simplicial sets from normalized chains, integral
//! homology via Smith normal form, and mod-p Bocksteins.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{FiniteSimplicialSet, SimplexRef};
use crate::chains::{
    complex_homology, Direction, Field, FieldSpec, GradedComplex, HomologyGroup, IntegralComplex,
    IntegralHomologyGroup, PrimeField, SparseMatrix, SparseVec,
};
use crate::error::{Error, Result};

/// Signed boundary of an `n`-cell as (position among (n-1)-cells, ±1) pairs.
fn cell_boundary(k: &FiniteSimplicialSet, id: usize) -> Vec<(usize, i64)> {
    let n = k.cell_dim(id);
    if n == 0 {
        return Vec::new();
    }
    let s = SimplexRef::cell(id);
    (0..=n)
        .filter_map(|i| {
            let f = k.face(i, &s);
            (!f.is_degenerate()).then(|| (k.dim_position(f.cell), if i % 2 == 0 { 1 } else { -1 }))
        })
        .collect()
}

/// `N_*(K)` with bases the nondegenerate cells, stored on `[-1, dim K + 1]`.
pub fn normalized_chain_complex<F: Field>(field: &F, k: &FiniteSimplicialSet) -> Result<GradedComplex<F::Elem>> {
    let top = k.dim() as i64;
    let mut c = GradedComplex::new(Direction::Chain, -1, top + 1);
    for n in 0..=k.dim() {
        let labels = k.cells_of_dim(n).iter().map(|&id| k.cell(id).name.clone()).collect();
        c.set_component(n as i64, k.cells_of_dim(n).len(), Some(labels))?;
    }
    for n in 1..=k.dim() {
        let cols = k
            .cells_of_dim(n)
            .iter()
            .map(|&id| SparseVec::from_pairs(field, cell_boundary(k, id).into_iter().map(|(r, s)| (r, field.from_i64(s)))))
            .collect();
        c.set_differential(n as i64, SparseMatrix::from_columns(k.cells_of_dim(n - 1).len(), cols)?)?;
    }
    Ok(c)
}

/// Homology of `K` in degrees `0..=dim K`.
#[derive(Clone, Debug)]
pub struct HomologyReport<E> {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub groups: Vec<HomologyGroup<E>>,
    pub complex: GradedComplex<E>,
}

pub fn homology<F: Field>(field: &F, k: &FiniteSimplicialSet) -> Result<HomologyReport<F::Elem>> {
    let complex = normalized_chain_complex(field, k)?;
    let groups = complex_homology(field, &complex, 0, k.dim() as i64)?;
    Ok(HomologyReport { field: field.spec(), dims: groups.iter().map(|g| g.dim).collect(), groups, complex })
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralHomology {
    pub groups: Vec<IntegralHomologyGroup>,
    #[serde(skip)]
    pub complex: IntegralComplex,
}

impl IntegralHomology {
    /// Whether any torsion coefficient is divisible by `p`.
    pub fn has_p_torsion(&self, p: u64) -> bool {
        self.groups.iter().any(|g| {
            g.torsion.iter().any(|t| t.parse::<BigInt>().map(|t| (t % BigInt::from(p)).is_zero()).unwrap_or(false))
        })
    }

    /// Mod-p Betti numbers predicted by the universal coefficient theorem.
    pub fn mod_p_dims(&self, p: u64) -> Vec<usize> {
        let tors = |g: &IntegralHomologyGroup| {
            g.torsion
                .iter()
                .filter(|t| t.parse::<BigInt>().map(|t| (t % BigInt::from(p)).is_zero()).unwrap_or(false))
                .count()
        };
        (0..self.groups.len())
            .map(|n| self.groups[n].rank + tors(&self.groups[n]) + if n > 0 { tors(&self.groups[n - 1]) } else { 0 })
            .collect()
    }
}

pub fn integral_homology(k: &FiniteSimplicialSet) -> Result<IntegralHomology> {
    let dims: Vec<usize> = (0..=k.dim()).map(|n| k.cells_of_dim(n).len()).collect();
    let mut boundaries = vec![Vec::new()];
    for n in 1..=k.dim() {
        let mut m = vec![vec![BigInt::zero(); dims[n]]; dims[n - 1]];
        for (j, &id) in k.cells_of_dim(n).iter().enumerate() {
            for (r, s) in cell_boundary(k, id) {
                m[r][j] += s;
            }
        }
        boundaries.push(m);
    }
    let complex = IntegralComplex::new(dims, boundaries)?;
    Ok(IntegralHomology { groups: complex.homology(), complex })
}

/// The Bockstein `H_n(K; F_p) → H_{n-1}(K; F_p)` as a matrix in the
/// representative bases of `homology(F_p, K)`.
pub fn bockstein(k: &FiniteSimplicialSet, p: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    if n == 0 || n > k.dim() {
        return Err(Error::InvalidParameter(format!("Bockstein from degree {n} of a {}-dimensional set", k.dim())));
    }
    let field = PrimeField::new(p)?;
    let h = homology(&field, k)?;
    let integral = integral_homology(k)?;
    let modulus = BigInt::from(p);
    let mut out = vec![vec![0u64; h.groups[n].dim]; h.groups[n - 1].dim];
    for (j, rep) in h.groups[n].reps.iter().enumerate() {
        let lift: Vec<BigInt> = rep.to_dense(&field, k.cells_of_dim(n).len()).into_iter().map(BigInt::from).collect();
        let boundary = integral.complex.apply(n, &lift);
        let mut reduced = Vec::with_capacity(boundary.len());
        for (i, b) in boundary.into_iter().enumerate() {
            if !(&b % &modulus).is_zero() {
                return Err(Error::Malformed(format!("lifted cycle has boundary {b} at {i}, not divisible by {p}")));
            }
            reduced.push((i, field.from_fraction(&(b / &modulus), &BigInt::from(1))?));
        }
        let v = SparseVec::from_pairs(&field, reduced);
        for (i, c) in h.groups[n - 1].coords(&field, &v)?.into_iter().enumerate() {
            out[i][j] = c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{rank_decompose, Rationals};
    use crate::sset::{build_standard, smash, BuildKind};

    fn dims_q(kind: BuildKind) -> Vec<usize> {
        homology(&Rationals, &build_standard(&kind).unwrap()).unwrap().dims
    }

    #[test]
    fn standard_spaces() {
        assert_eq!(dims_q(BuildKind::Simplex(3)), vec![1, 0, 0, 0]);
        assert_eq!(dims_q(BuildKind::MinimalSphere(2)), vec![1, 0, 1]);
        assert_eq!(dims_q(BuildKind::Polygon(4)), vec![1, 1]);
        assert_eq!(dims_q(BuildKind::MinimalSphere(0)), vec![2]);
        assert_eq!(dims_q(BuildKind::Moore1(3)), vec![1, 0, 0]);
    }

    #[test]
    fn moore_space_mod_three() {
        let m = build_standard(&BuildKind::Moore1(3)).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(homology(&f3, &m).unwrap().dims, vec![1, 1, 1]);
        let z = integral_homology(&m).unwrap();
        assert_eq!(z.groups[1].torsion, vec!["3".to_string()]);
        assert_eq!(z.mod_p_dims(3), vec![1, 1, 1]);
        assert_eq!(z.mod_p_dims(5), vec![1, 0, 0]);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(homology(&f5, &m).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn bockstein_on_moore_space_is_an_isomorphism() {
        let m = build_standard(&BuildKind::Moore1(3)).unwrap();
        let b = bockstein(&m, 3, 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_ne!(b[0][0], 0);
        let b1 = bockstein(&m, 3, 1).unwrap();
        // β∘β = 0
        let comp: u64 = b1.iter().map(|row| row.iter().zip(&b).map(|(x, col)| x * col[0]).sum::<u64>()).sum();
        assert_eq!(comp % 3, 0);
    }

    #[test]
    fn bockstein_vanishes_on_the_circle() {
        let s1 = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
        assert_eq!(bockstein(&s1, 3, 1).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn smash_of_circles_has_a_top_class() {
        let s1 = build_standard(&BuildKind::MinimalSphere(1)).unwrap();
        let sm = smash(&s1, &s1).unwrap();
        assert_eq!(homology(&Rationals, &sm.set).unwrap().dims, vec![1, 0, 1]);
    }

    #[test]
    fn normalized_dimension_matches_cell_count() {
        // the quotient of all level-p chains by degeneracy images has the nondegenerate count
        use crate::chains::normalize_quotient;
        let f = Rationals;
        for kind in [BuildKind::MinimalSphere(1), BuildKind::Moore1(3), BuildKind::Simplex(2)] {
            let k = build_standard(&kind).unwrap();
            for p in 0..=3 {
                let level = k.level_simplices(p);
                let index = |s: &SimplexRef| level.iter().position(|t| t == s).unwrap();
                let degs: Vec<_> = if p == 0 {
                    Vec::new()
                } else {
                    let lower = k.level_simplices(p - 1);
                    (0..p)
                        .map(|j| {
                            let cols = lower
                                .iter()
                                .map(|s| SparseVec::unit(&f, index(&k.degeneracy(j, s))))
                                .collect();
                            SparseMatrix::from_columns(level.len(), cols).unwrap()
                        })
                        .collect()
                };
                let q = normalize_quotient(&f, level.len(), &degs).unwrap();
                assert_eq!(q.basis.len(), k.cells_of_dim(p).len(), "{kind:?} p={p}");
                let _ = rank_decompose(&f, &q.projection);
            }
        }
    }

    #[test]
    fn rational_and_mod_p_agree_without_torsion() {
        for kind in [BuildKind::MinimalSphere(2), BuildKind::Polygon(3), BuildKind::Simplex(2)] {
            let k = build_standard(&kind).unwrap();
            let z = integral_homology(&k).unwrap();
            assert!(!z.has_p_torsion(7));
            let f7 = PrimeField::new(7).unwrap();
            assert_eq!(homology(&f7, &k).unwrap().dims, homology(&Rationals, &k).unwrap().dims);
        }
    }
}
