//! Free graded-commutative differential algebras with rational structure constants.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chains::Field;
use crate::error::{Error, Result};

/// Exponent vector over the generators in their given order.
pub type Monomial = Vec<u32>;

/// A polynomial as (coefficient, monomial) terms.
pub type Polynomial = Vec<(BigRational, Monomial)>;

/// `Λ(odd generators) ⊗ k[even generators]` with a differential of degree +1.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeGCAlgebra {
    names: Vec<String>,
    degrees: Vec<usize>,
    differential: Vec<Polynomial>,
}

impl FreeGCAlgebra {
    pub fn new(generators: Vec<(String, usize)>, differential: Vec<Polynomial>) -> Result<Self> {
        if differential.len() != generators.len() {
            return Err(Error::Coefficients("one differential per generator is required".into()));
        }
        let (names, degrees): (Vec<String>, Vec<usize>) = generators.into_iter().unzip();
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Coefficients(format!("generator `{}` has degree 0", names[i])));
        }
        let a = FreeGCAlgebra { names, degrees, differential };
        a.validate()?;
        Ok(a)
    }

    /// The exterior algebra on one generator of odd degree `n`.
    pub fn exterior(name: &str, n: usize) -> Result<Self> {
        FreeGCAlgebra::new(vec![(name.to_string(), n)], vec![Vec::new()])
    }

    fn validate(&self) -> Result<()> {
        let k = self.names.len();
        for (i, poly) in self.differential.iter().enumerate() {
            for (c, m) in poly {
                if m.len() != k {
                    return Err(Error::Coefficients(format!("term of d({}) has the wrong length", self.names[i])));
                }
                if c.is_zero() {
                    continue;
                }
                if !self.is_nonzero_monomial(m) {
                    return Err(Error::Coefficients(format!(
                        "d({}) contains the square of an odd generator",
                        self.names[i]
                    )));
                }
                if self.degree(m) != self.degrees[i] + 1 {
                    return Err(Error::Coefficients(format!(
                        "d({}) is not homogeneous of degree {}",
                        self.names[i],
                        self.degrees[i] + 1
                    )));
                }
            }
        }
        for i in 0..k {
            let dd = self.d_poly(&self.differential[i]);
            if !dd.is_empty() {
                return Err(Error::Coefficients(format!("d∘d ≠ 0 on `{}`", self.names[i])));
            }
        }
        Ok(())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn differential(&self) -> &[Polynomial] {
        &self.differential
    }

    /// Whether the augmentation ideal vanishes in degrees `≤ c`.
    pub fn is_c_connected(&self, c: usize) -> bool {
        self.degrees.iter().all(|&d| d > c)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(usize::MAX)
    }

    pub fn degree(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.degrees).map(|(e, d)| *e as usize * d).sum()
    }

    fn is_nonzero_monomial(&self, m: &[u32]) -> bool {
        m.iter().zip(&self.degrees).all(|(e, d)| d % 2 == 0 || *e <= 1)
    }

    /// `a · b` as `(negative, monomial)`, or `None` when an odd square appears.
    pub fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
        let mut sign = false;
        let mut odd_after = 0u32;
        // walk generators from the last: b's odd generators pass a's later odd ones
        for j in (0..a.len()).rev() {
            if self.degrees[j] % 2 == 1 {
                if a[j] > 0 && b[j] > 0 {
                    return None;
                }
                if b[j] > 0 && odd_after % 2 == 1 {
                    sign = !sign;
                }
                odd_after += a[j];
            }
        }
        Some((sign, a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }

    fn mul_poly(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (ca, ma) in a {
            for (cb, mb) in b {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    let c = if neg { -c } else { c };
                    *acc.entry(m).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        let mut out: Polynomial = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        out.sort_by(|x, y| x.1.cmp(&y.1));
        out
    }

    fn generator_power(&self, i: usize, e: u32) -> Monomial {
        let mut m = vec![0; self.names.len()];
        m[i] = e;
        m
    }

    /// `d` of a monomial by the Leibniz rule.
    pub fn d_monomial(&self, m: &[u32]) -> Polynomial {
        let k = self.names.len();
        let mut total: Polynomial = Vec::new();
        for i in 0..k {
            let e = m[i];
            if e == 0 || self.differential[i].is_empty() {
                continue;
            }
            let prefix: Monomial = (0..k).map(|j| if j < i { m[j] } else { 0 }).collect();
            let suffix: Monomial = (0..k).map(|j| if j > i { m[j] } else { 0 }).collect();
            // d(x^e) = e x^{e-1} dx
            let coef = BigRational::from_integer(e.into());
            let lead = vec![(coef, self.generator_power(i, e - 1))];
            let dx = self.mul_poly(&lead, &self.differential[i]);
            let sign_neg = self.degree(&prefix) % 2 == 1;
            let mut term = self.mul_poly(&vec![(BigRational::one(), prefix)], &dx);
            term = self.mul_poly(&term, &vec![(BigRational::one(), suffix)]);
            if sign_neg {
                term = term.into_iter().map(|(c, m)| (-c, m)).collect();
            }
            total.extend(term);
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (c, m) in total {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut out: Polynomial = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        out.sort_by(|x, y| x.1.cmp(&y.1));
        out
    }

    fn d_poly(&self, p: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (c, m) in p {
            for (c2, m2) in self.d_monomial(m) {
                *acc.entry(m2).or_insert_with(BigRational::zero) += c * c2;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect()
    }

    /// All nonzero monomials of degree `≤ max_degree`, the unit first.
    pub fn monomials(&self, max_degree: usize) -> Vec<Monomial> {
        let k = self.names.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; k];
        fn rec(a: &FreeGCAlgebra, i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            let d = a.degrees[i];
            let cap = if d % 2 == 1 { 1 } else { left / d };
            for e in 0..=cap.min(left / d) {
                cur[i] = e as u32;
                rec(a, i + 1, left - e * d, cur, out);
            }
            cur[i] = 0;
        }
        rec(self, 0, max_degree, &mut cur, &mut out);
        out.sort_by_key(|m| (self.degree(m), m.clone()));
        out
    }

    pub fn render_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("")
        }
    }
}

/// A truncated monomial basis with multiplication and differential over a field.
#[derive(Clone, Debug)]
pub struct AlgebraBasis<E> {
    pub monomials: Vec<Monomial>,
    pub degrees: Vec<usize>,
    index: HashMap<Monomial, u32>,
    /// `d` of every basis monomial, as (coefficient, index) terms.
    pub d: Vec<Vec<(E, u32)>>,
}

impl<E: Clone + PartialEq> AlgebraBasis<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, a: &FreeGCAlgebra, max_degree: usize) -> Result<Self> {
        let monomials = a.monomials(max_degree);
        let degrees = monomials.iter().map(|m| a.degree(m)).collect();
        let index: HashMap<Monomial, u32> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let mut d = Vec::with_capacity(monomials.len());
        for m in &monomials {
            let mut terms = Vec::new();
            if a.degree(m) < max_degree {
                for (c, m2) in a.d_monomial(m) {
                    let v = field
                        .from_fraction(c.numer(), c.denom())
                        .map_err(|e| Error::Coefficients(format!("structure constant {c}: {e}")))?;
                    if !field.is_zero(&v) {
                        terms.push((v, index[&m2]));
                    }
                }
            }
            d.push(terms);
        }
        Ok(AlgebraBasis { monomials, degrees, index, d })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Product of basis monomials: `None` when zero or beyond the truncation.
    pub fn mul(&self, a: &FreeGCAlgebra, x: u32, y: u32) -> Option<(bool, u32)> {
        let (neg, m) = a.mul_monomials(&self.monomials[x as usize], &self.monomials[y as usize])?;
        self.index.get(&m).map(|&i| (neg, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Rationals;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Model of S^2: y in degree 2, x in degree 3, dx = y^2.
    fn sphere2() -> FreeGCAlgebra {
        FreeGCAlgebra::new(
            vec![("y".into(), 2), ("x".into(), 3)],
            vec![vec![], vec![(q(1), vec![2, 0])]],
        )
        .unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = FreeGCAlgebra::new(vec![("a".into(), 1), ("b".into(), 3)], vec![vec![], vec![]]).unwrap();
        assert_eq!(a.mul_monomials(&[1, 0], &[0, 1]), Some((false, vec![1, 1])));
        assert_eq!(a.mul_monomials(&[0, 1], &[1, 0]), Some((true, vec![1, 1])));
        assert_eq!(a.mul_monomials(&[1, 0], &[1, 0]), None);
    }

    #[test]
    fn leibniz_on_sphere_model() {
        let a = sphere2();
        // d(yx) = y·y^2 = y^3
        assert_eq!(a.d_monomial(&[1, 1]), vec![(q(1), vec![3, 0])]);
        // d(x y) with x odd: d(x)·y... monomial order is y then x, same element
        assert!(a.d_monomial(&[2, 0]).is_empty());
    }

    #[test]
    fn rejects_bad_differentials() {
        // d x = y (degree mismatch)
        let bad = FreeGCAlgebra::new(vec![("y".into(), 2), ("x".into(), 3)], vec![vec![], vec![(q(1), vec![1, 0])]]);
        assert!(bad.is_err());
        // d y = x with d x = 0 is fine; d a = b, d b = a^2 style failure of d² = 0
        let bad2 = FreeGCAlgebra::new(
            vec![("u".into(), 2), ("v".into(), 3), ("w".into(), 4)],
            vec![vec![], vec![(q(1), vec![0, 0, 1])], vec![]],
        );
        assert!(bad2.is_ok());
        let bad3 = FreeGCAlgebra::new(vec![("e".into(), 0)], vec![vec![]]);
        assert!(bad3.is_err());
    }

    #[test]
    fn truncated_basis() {
        let a = FreeGCAlgebra::exterior("x", 3).unwrap();
        let b = AlgebraBasis::new(&Rationals, &a, 10).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.mul(&a, 1, 1), None);
        let s = sphere2();
        let bs = AlgebraBasis::new(&Rationals, &s, 7).unwrap();
        // 1, y, x, y^2, yx, y^3, y^2x
        assert_eq!(bs.len(), 7);
        assert!(s.is_c_connected(1));
        assert!(!s.is_c_connected(2));
    }
}
