//! Shuffles, the Eilenberg–Zilber shuffle map on simplices and the
//! Alexander–Whitney cup product on normalized cochains.

use itertools::Itertools;

use super::field::Field;
use super::linalg::SparseVec;
use crate::error::{Error, Result};
use crate::sset::{FiniteSimplicialSet, SimplexRef};

/// A `(p,q)`-shuffle: `mu` (length p) and `nu` (length q) partition
/// `0..p+q`, both increasing. `odd` is the parity of the permutation `(mu, nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub odd: bool,
}

/// All `(p,q)`-shuffles in lexicographic order of `mu`.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    (0..p + q)
        .combinations(p)
        .map(|mu| {
            let nu: Vec<usize> = (0..p + q).filter(|t| !mu.contains(t)).collect();
            let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
            Shuffle { mu, nu, odd: inversions % 2 == 1 }
        })
        .collect()
}

/// Applies `s_{idx[k-1]} ⋯ s_{idx[0]}` (first index first) to `s`.
pub fn iterated_degeneracy(k: &FiniteSimplicialSet, idx: &[usize], s: &SimplexRef) -> SimplexRef {
    idx.iter().fold(s.clone(), |acc, &j| k.degeneracy(j, &acc))
}

/// The shuffle map on a pair of simplices: the terms `± (s_ν a, s_μ b)` of
/// `sh(a ⊗ b)` that are nondegenerate in `K × L`. Signs are `true` for minus.
pub fn shuffle_map(
    k: &FiniteSimplicialSet,
    a: &SimplexRef,
    l: &FiniteSimplicialSet,
    b: &SimplexRef,
) -> Vec<(bool, SimplexRef, SimplexRef)> {
    let p = k.level(a);
    let q = l.level(b);
    shuffles(p, q)
        .into_iter()
        .filter_map(|sh| {
            let x = iterated_degeneracy(k, &sh.nu, a);
            let y = iterated_degeneracy(l, &sh.mu, b);
            let degenerate = x.degens.iter().any(|j| y.degens.contains(j));
            (!degenerate).then_some((sh.odd, x, y))
        })
        .collect()
}

/// Alexander–Whitney cup product of normalized cochains. Cochains are
/// vectors indexed by the position of a cell among the cells of its dimension.
pub fn cup_product<F: Field>(
    field: &F,
    k: &FiniteSimplicialSet,
    x: (usize, &SparseVec<F::Elem>),
    y: (usize, &SparseVec<F::Elem>),
) -> Result<SparseVec<F::Elem>> {
    let (q, xv) = x;
    let (r, yv) = y;
    for (deg, v) in [(q, xv), (r, yv)] {
        if v.max_index().is_some_and(|m| m >= k.cells_of_dim(deg).len()) {
            return Err(Error::DimensionMismatch(format!("cochain index out of range in degree {deg}")));
        }
    }
    let front: Vec<usize> = (0..=q).collect();
    let back: Vec<usize> = (q..=q + r).collect();
    let mut out = Vec::new();
    for (pos, &id) in k.cells_of_dim(q + r).iter().enumerate() {
        let sigma = SimplexRef::cell(id);
        let f = k.apply_unchecked(&front, &sigma);
        let b = k.apply_unchecked(&back, &sigma);
        if f.is_degenerate() || b.is_degenerate() {
            continue;
        }
        let u = xv.get(field, k.dim_position(f.cell));
        let v = yv.get(field, k.dim_position(b.cell));
        let prod = field.mul(&u, &v);
        if !field.is_zero(&prod) {
            out.push((pos, prod));
        }
    }
    Ok(SparseVec::from_pairs(field, out))
}

/// Normalized coboundary `(δf)(σ) = Σ (-1)^i f(d_i σ)` from degree `q` to `q+1`.
pub fn coboundary<F: Field>(field: &F, k: &FiniteSimplicialSet, q: usize, f: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::new();
    for (pos, &id) in k.cells_of_dim(q + 1).iter().enumerate() {
        let sigma = SimplexRef::cell(id);
        for i in 0..=q + 1 {
            let face = k.face(i, &sigma);
            if face.is_degenerate() {
                continue;
            }
            let v = f.get(field, k.dim_position(face.cell));
            if !field.is_zero(&v) {
                let v = if i % 2 == 1 { field.neg(&v) } else { v };
                out.push((pos, v));
            }
        }
    }
    SparseVec::from_pairs(field, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::field::Rationals;
    use crate::sset::{build_standard, BuildKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn shuffle_counts_and_signs() {
        assert_eq!(shuffles(0, 3).len(), 1);
        assert!(!shuffles(0, 3)[0].odd);
        assert_eq!(shuffles(2, 0).len(), 1);
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_ne!(s[0].odd, s[1].odd);
        assert_eq!(shuffles(2, 2).len(), 6);
    }

    type Chain = HashMap<(SimplexRef, SimplexRef), i64>;

    fn boundary_pair(k: &FiniteSimplicialSet, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for ((a, b), coef) in c {
            let n = k.level(a);
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let x = k.face(i, a);
                let y = k.face(i, b);
                if x.degens.iter().any(|j| y.degens.contains(j)) {
                    continue;
                }
                let s = if i % 2 == 0 { *coef } else { -*coef };
                *out.entry((x, y)).or_default() += s;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn boundary_single(k: &FiniteSimplicialSet, a: &SimplexRef) -> Vec<(i64, SimplexRef)> {
        let n = k.level(a);
        if n == 0 {
            return Vec::new();
        }
        (0..=n)
            .map(|i| (if i % 2 == 0 { 1 } else { -1 }, k.face(i, a)))
            .filter(|(_, s)| !s.is_degenerate())
            .collect()
    }

    fn sh(k: &FiniteSimplicialSet, a: &SimplexRef, b: &SimplexRef, coef: i64, out: &mut Chain) {
        for (odd, x, y) in shuffle_map(k, a, k, b) {
            *out.entry((x, y)).or_default() += if odd { -coef } else { coef };
        }
    }

    #[test]
    fn shuffle_map_is_a_chain_map() {
        let k = build_standard(&BuildKind::Simplex(3)).unwrap();
        for p in 0..=2 {
            for q in 0..=(4 - p).min(2) {
                for &ca in k.cells_of_dim(p) {
                    for &cb in k.cells_of_dim(q) {
                        let a = SimplexRef::cell(ca);
                        let b = SimplexRef::cell(cb);
                        let mut lhs = Chain::new();
                        sh(&k, &a, &b, 1, &mut lhs);
                        let lhs = boundary_pair(&k, &lhs);
                        let mut rhs = Chain::new();
                        for (s, da) in boundary_single(&k, &a) {
                            sh(&k, &da, &b, s, &mut rhs);
                        }
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        for (s, db) in boundary_single(&k, &b) {
                            sh(&k, &a, &db, sign * s, &mut rhs);
                        }
                        rhs.retain(|_, v| *v != 0);
                        assert_eq!(lhs, rhs, "p={p} q={q}");
                    }
                }
            }
        }
    }

    fn random_cochain(f: &Rationals, k: &FiniteSimplicialSet, q: usize, rng: &mut ChaCha8Rng) -> SparseVec<num_rational::BigRational> {
        let n = k.cells_of_dim(q).len();
        SparseVec::from_pairs(f, (0..n).map(|i| (i, f.from_i64(rng.gen_range(-3..=3)))))
    }

    #[test]
    fn cup_is_associative_unital_and_leibniz() {
        let f = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in [BuildKind::Simplex(3), BuildKind::Moore1(3), BuildKind::MinimalSphere(2)] {
            let k = build_standard(&kind).unwrap();
            let unit = SparseVec::from_pairs(&f, (0..k.cells_of_dim(0).len()).map(|i| (i, f.one())));
            for _ in 0..200 {
                let q = rng.gen_range(0..=2);
                let r = rng.gen_range(0..=(k.dim().saturating_sub(q)).min(2));
                let x = random_cochain(&f, &k, q, &mut rng);
                let y = random_cochain(&f, &k, r, &mut rng);
                assert_eq!(cup_product(&f, &k, (0, &unit), (q, &x)).unwrap(), x);
                assert_eq!(cup_product(&f, &k, (q, &x), (0, &unit)).unwrap(), x);
                if q + r < k.dim() {
                    let lhs = coboundary(&f, &k, q + r, &cup_product(&f, &k, (q, &x), (r, &y)).unwrap());
                    let a = cup_product(&f, &k, (q + 1, &coboundary(&f, &k, q, &x)), (r, &y)).unwrap();
                    let b = cup_product(&f, &k, (q, &x), (r + 1, &coboundary(&f, &k, r, &y))).unwrap();
                    let rhs = if q % 2 == 0 { a.add(&f, &b) } else { a.sub(&f, &b) };
                    assert_eq!(lhs, rhs);
                }
                let s = rng.gen_range(0..=1);
                if q + r + s <= k.dim() {
                    let z = random_cochain(&f, &k, s, &mut rng);
                    let xy = cup_product(&f, &k, (q, &x), (r, &y)).unwrap();
                    let yz = cup_product(&f, &k, (r, &y), (s, &z)).unwrap();
                    assert_eq!(
                        cup_product(&f, &k, (q + r, &xy), (s, &z)).unwrap(),
                        cup_product(&f, &k, (q, &x), (r + s, &yz)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cup_on_interval_picks_the_endpoint() {
        let f = Rationals;
        let k = build_standard(&BuildKind::Simplex(1)).unwrap();
        // vertex 1 is the back vertex of the edge, so v0* ∪ e* = e*, v1* ∪ e* = 0
        let e = SparseVec::unit(&f, 0);
        let v0 = SparseVec::unit(&f, 0);
        let v1 = SparseVec::unit(&f, 1);
        assert_eq!(cup_product(&f, &k, (0, &v0), (1, &e)).unwrap(), e);
        assert!(cup_product(&f, &k, (0, &v1), (1, &e)).unwrap().is_zero());
        assert_eq!(cup_product(&f, &k, (1, &e), (0, &v1)).unwrap(), e);
    }

    #[test]
    fn top_square_on_two_sphere_vanishes() {
        let f = Rationals;
        let k = build_standard(&BuildKind::MinimalSphere(2)).unwrap();
        let top = SparseVec::unit(&f, 0);
        assert!(cup_product(&f, &k, (2, &top), (2, &top)).unwrap().is_zero());
    }
}
