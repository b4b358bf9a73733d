//! Integer chain complexes and Smith normal form, for torsion and Bocksteins.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A chain complex of free abelian groups in degrees `0..=top`, with
/// boundaries `d_n: C_n → C_{n-1}` stored as dense row-major integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralComplex {
    dims: Vec<usize>,
    /// `boundaries[n]` is `d_n` (`dims[n-1]` rows, `dims[n]` columns); `boundaries[0]` is empty.
    boundaries: Vec<Vec<Vec<BigInt>>>,
}

/// Integral homology in one degree: free rank and torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralHomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl IntegralComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<Vec<Vec<BigInt>>>) -> Result<Self> {
        if boundaries.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} boundary matrices for {} degrees",
                boundaries.len(),
                dims.len()
            )));
        }
        for n in 1..dims.len() {
            let m = &boundaries[n];
            if m.len() != dims[n - 1] || m.iter().any(|r| r.len() != dims[n]) {
                return Err(Error::DimensionMismatch(format!("boundary d_{n} has the wrong shape")));
            }
        }
        let c = IntegralComplex { dims, boundaries };
        c.check_d_squared()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `d_n`, or an empty matrix outside the stored range.
    pub fn boundary(&self, n: usize) -> &[Vec<BigInt>] {
        if n == 0 || n >= self.dims.len() {
            &[]
        } else {
            &self.boundaries[n]
        }
    }

    /// `d_n` applied to an integer vector of `C_n`.
    pub fn apply(&self, n: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.boundary(n)
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn check_d_squared(&self) -> Result<()> {
        for n in 2..self.dims.len() {
            let a = &self.boundaries[n - 1];
            let b = &self.boundaries[n];
            for (i, row) in a.iter().enumerate() {
                for j in 0..self.dims[n] {
                    let s: BigInt = row.iter().enumerate().map(|(k, x)| x * &b[k][j]).sum();
                    if !s.is_zero() {
                        return Err(Error::Malformed(format!("d_{} d_{n} ≠ 0 at ({i}, {j})", n - 1)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Free rank and torsion of `H_n` for every stored degree.
    pub fn homology(&self) -> Vec<IntegralHomologyGroup> {
        let diags: Vec<Vec<BigInt>> = (0..=self.top() + 1)
            .map(|n| smith_diagonal(self.boundary(n)))
            .collect();
        (0..=self.top())
            .map(|n| {
                let rank_out = diags[n].len();
                let incoming = &diags[n + 1];
                let torsion = incoming
                    .iter()
                    .filter(|d| !d.is_one())
                    .map(|d| d.to_string())
                    .collect();
                IntegralHomologyGroup { degree: n, rank: self.dims[n] - rank_out - incoming.len(), torsion }
            })
            .collect()
    }
}

/// Nonzero invariant factors (positive, each dividing the next) of an
/// integer matrix given by rows.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn diagonal_of_small_matrices() {
        assert_eq!(smith_diagonal(&mat(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_diagonal(&mat(&[&[3]])), vec![BigInt::from(3)]);
        assert!(smith_diagonal(&mat(&[&[0, 0]])).is_empty());
        assert_eq!(
            smith_diagonal(&mat(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn projective_plane_like_complex_has_two_torsion() {
        // one cell per degree 0..2, d_1 = 0, d_2 = 2
        let c = IntegralComplex::new(
            vec![1, 1, 1],
            vec![vec![], mat(&[&[0]]), mat(&[&[2]])],
        )
        .unwrap();
        let h = c.homology();
        assert_eq!(h[0].rank, 1);
        assert_eq!(h[1].rank, 0);
        assert_eq!(h[1].torsion, vec!["2".to_string()]);
        assert_eq!(h[2].rank, 0);
    }

    #[test]
    fn rejects_nonzero_square() {
        let r = IntegralComplex::new(vec![1, 1, 1], vec![vec![], mat(&[&[1]]), mat(&[&[1]])]);
        assert!(r.is_err());
    }
}
