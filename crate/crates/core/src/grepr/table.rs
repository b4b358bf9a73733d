//! Character tables, central idempotents and representation-ring arithmetic.

use std::collections::BTreeSet;

use super::group::GroupData;
use crate::chains::Field;
use crate::error::{Error, Result};

/// Irreducible characters of a group over a splitting field, constant on
/// conjugacy classes. Row 0 is the trivial character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable<E> {
    pub labels: Vec<String>,
    pub degrees: Vec<usize>,
    /// `values[i][c]` is `χ_i` on conjugacy class `c`.
    pub values: Vec<Vec<E>>,
}

/// An element of the group algebra as coefficients indexed by group element.
pub type GroupAlgebraElem<E> = Vec<E>;

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> CharacterTable<E> {
    /// The characters of `ℤ/n` sending the generator to powers of `root`,
    /// which must be a primitive `n`-th root of unity in the field.
    pub fn cyclic<F: Field<Elem = E>>(field: &F, group: &GroupData, root: &E) -> Result<Self> {
        let n = group.order();
        let mut powers = vec![field.one()];
        for _ in 1..n {
            powers.push(field.mul(powers.last().unwrap(), root));
        }
        if !field.is_one(&field.mul(powers.last().unwrap(), root)) || (1..n).any(|k| field.is_one(&powers[k])) {
            return Err(Error::CharacterTable(format!(
                "{} is not a primitive {n}-th root of unity",
                field.render(root)
            )));
        }
        // element k of the cyclic group is g^k and sits alone in class k
        let values = (0..n).map(|i| (0..n).map(|k| powers[(i * k) % n].clone()).collect()).collect();
        let labels = (0..n).map(|i| if i == 0 { "trivial".to_string() } else { format!("chi{i}") }).collect();
        let t = CharacterTable { labels, degrees: vec![1; n], values };
        t.validate(field, group)?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `χ_i(g)` for a group element.
    pub fn value(&self, group: &GroupData, i: usize, g: usize) -> &E {
        &self.values[i][group.class_of(g)]
    }

    pub fn validate<F: Field<Elem = E>>(&self, field: &F, group: &GroupData) -> Result<()> {
        let k = group.classes().len();
        let order = group.order();
        if self.degrees.len() != k || self.values.len() != k || self.labels.len() != k {
            return Err(Error::CharacterTable(format!(
                "{} irreducibles given for {k} conjugacy classes",
                self.degrees.len()
            )));
        }
        if self.values.iter().any(|row| row.len() != k) {
            return Err(Error::CharacterTable("every character needs one value per class".into()));
        }
        let p = field.spec().characteristic();
        if p != 0 && order as u64 % p == 0 {
            return Err(Error::CharacterTable(format!(
                "the characteristic {p} divides the group order {order}"
            )));
        }
        let sum: usize = self.degrees.iter().map(|n| n * n).sum();
        if sum != order {
            return Err(Error::CharacterTable(format!(
                "squared degrees sum to {sum}, the group has order {order}"
            )));
        }
        if self.degrees[0] != 1 || self.values[0].iter().any(|v| !field.is_one(v)) {
            return Err(Error::CharacterTable("the first character must be trivial".into()));
        }
        let e_class = group.class_of(group.identity());
        for (i, n) in self.degrees.iter().enumerate() {
            if self.values[i][e_class] != field.from_i64(*n as i64) {
                return Err(Error::CharacterTable(format!(
                    "character `{}` at the identity differs from its degree {n}",
                    self.labels[i]
                )));
            }
        }
        let inv_order = field
            .inv(&field.from_i64(order as i64))
            .ok_or_else(|| Error::CharacterTable("group order is not invertible".into()))?;
        for i in 0..k {
            for j in 0..k {
                let mut s = field.zero();
                for g in 0..order {
                    let t = field.mul(self.value(group, i, g), self.value(group, j, group.inv(g)));
                    s = field.add(&s, &t);
                }
                let s = field.mul(&s, &inv_order);
                let expected = if i == j { field.one() } else { field.zero() };
                if s != expected {
                    return Err(Error::CharacterTable(format!(
                        "characters `{}` and `{}` fail row orthogonality",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Product in the group algebra.
pub fn group_algebra_mul<F: Field>(
    field: &F,
    group: &GroupData,
    a: &GroupAlgebraElem<F::Elem>,
    b: &GroupAlgebraElem<F::Elem>,
) -> GroupAlgebraElem<F::Elem> {
    let mut out = vec![field.zero(); group.order()];
    for (g, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (h, y) in b.iter().enumerate() {
            let gh = group.mul(g, h);
            out[gh] = field.add(&out[gh], &field.mul(x, y));
        }
    }
    out
}

/// `e_i = (n_i/|G|) Σ_g χ_i(g⁻¹) g`, checked to be a complete family of
/// orthogonal idempotents.
pub fn central_idempotents<F: Field>(
    field: &F,
    group: &GroupData,
    table: &CharacterTable<F::Elem>,
) -> Result<Vec<GroupAlgebraElem<F::Elem>>> {
    table.validate(field, group)?;
    let inv_order = field
        .inv(&field.from_i64(group.order() as i64))
        .ok_or_else(|| Error::CharacterTable("group order is not invertible in the field".into()))?;
    let es: Vec<GroupAlgebraElem<F::Elem>> = (0..table.len())
        .map(|i| {
            let c = field.mul(&field.from_i64(table.degrees[i] as i64), &inv_order);
            (0..group.order())
                .map(|g| field.mul(&c, table.value(group, i, group.inv(g))))
                .collect()
        })
        .collect();
    let zero = vec![field.zero(); group.order()];
    let mut unit = zero.clone();
    unit[group.identity()] = field.one();
    let mut total = zero.clone();
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let prod = group_algebra_mul(field, group, ei, ej);
            let expected = if i == j { ei } else { &zero };
            if &prod != expected {
                return Err(Error::CharacterTable(format!(
                    "idempotents of `{}` and `{}` are not orthogonal",
                    table.labels[i], table.labels[j]
                )));
            }
        }
        total = total.iter().zip(ei).map(|(a, b)| field.add(a, b)).collect();
    }
    if total != unit {
        return Err(Error::CharacterTable("idempotents do not sum to 1".into()));
    }
    Ok(es)
}

/// Multiplicities `m_l` of the irreducibles in `χ_i · χ_j`, as nonnegative
/// integers. Over a prime field the residues are lifted to `[0, p)` and the
/// lift is accepted only when `Σ m_l n_l = n_i n_j`.
pub fn rep_product_decompose<F: Field>(
    field: &F,
    group: &GroupData,
    table: &CharacterTable<F::Elem>,
    i: usize,
    j: usize,
) -> Result<Vec<usize>> {
    if i >= table.len() || j >= table.len() {
        return Err(Error::InvalidParameter(format!("irreducible index out of range ({i}, {j})")));
    }
    let inv_order = field
        .inv(&field.from_i64(group.order() as i64))
        .ok_or_else(|| Error::CharacterTable("group order is not invertible".into()))?;
    let mut out = Vec::with_capacity(table.len());
    for l in 0..table.len() {
        let mut s = field.zero();
        for g in 0..group.order() {
            let t = field.mul(
                &field.mul(table.value(group, i, g), table.value(group, j, g)),
                table.value(group, l, group.inv(g)),
            );
            s = field.add(&s, &t);
        }
        let m = field.mul(&s, &inv_order);
        let m = field
            .to_integer(&m)
            .filter(|&m| m >= 0)
            .ok_or_else(|| Error::CharacterTable(format!("multiplicity {} is not a nonnegative integer", field.render(&m))))?;
        out.push(m as usize);
    }
    let lhs: usize = out.iter().zip(&table.degrees).map(|(m, n)| m * n).sum();
    if lhs != table.degrees[i] * table.degrees[j] {
        return Err(Error::CharacterTable(format!(
            "product of `{}` and `{}` does not decompose integrally",
            table.labels[i], table.labels[j]
        )));
    }
    Ok(out)
}

/// The least set containing `generators` and the trivial character that is
/// closed under taking constituents of products.
pub fn support_closure<F: Field>(
    field: &F,
    group: &GroupData,
    table: &CharacterTable<F::Elem>,
    generators: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    let mut closure: BTreeSet<usize> = generators.clone();
    closure.insert(0);
    loop {
        let mut added = false;
        let current: Vec<usize> = closure.iter().copied().collect();
        for &a in &current {
            for &b in &current {
                for (l, m) in rep_product_decompose(field, group, table, a, b)?.into_iter().enumerate() {
                    if m > 0 && closure.insert(l) {
                        added = true;
                    }
                }
            }
        }
        if !added {
            return Ok(closure);
        }
    }
}

/// Reads a character value written as an integer, a fraction, or (for the
/// cyclic tables used here) a power `w^k` of a chosen root of unity.
pub fn parse_character_value<F: Field>(field: &F, s: &str, root: Option<&F::Elem>) -> Result<F::Elem> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("w^").or_else(|| t.strip_prefix("ω^")) {
        let root = root.ok_or_else(|| Error::CharacterTable(format!("`{s}` needs a root of unity")))?;
        let k: usize = rest.parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
        let mut v = field.one();
        for _ in 0..k {
            v = field.mul(&v, root);
        }
        return Ok(v);
    }
    if t == "w" || t == "ω" {
        return root.cloned().ok_or_else(|| Error::CharacterTable(format!("`{s}` needs a root of unity")));
    }
    field.parse(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{PrimeField, Rationals};

    #[test]
    fn z2_idempotents_over_q() {
        let f = Rationals;
        let g = GroupData::cyclic(2).unwrap();
        let t = CharacterTable::cyclic(&f, &g, &f.from_i64(-1)).unwrap();
        let es = central_idempotents(&f, &g, &t).unwrap();
        let half = f.parse("1/2").unwrap();
        assert_eq!(es[0], vec![half.clone(), half.clone()]);
        assert_eq!(es[1], vec![half.clone(), f.neg(&half)]);
        assert_eq!(rep_product_decompose(&f, &g, &t, 1, 1).unwrap(), vec![1, 0]);
        assert_eq!(support_closure(&f, &g, &t, &[1].into()).unwrap(), [0, 1].into());
    }

    #[test]
    fn z3_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let g = GroupData::cyclic(3).unwrap();
        let t = CharacterTable::cyclic(&f, &g, &2).unwrap();
        let es = central_idempotents(&f, &g, &t).unwrap();
        assert_eq!(es.len(), 3);
        assert_eq!(rep_product_decompose(&f, &g, &t, 1, 1).unwrap(), vec![0, 0, 1]);
        assert_eq!(rep_product_decompose(&f, &g, &t, 0, 2).unwrap(), vec![0, 0, 1]);
        assert_eq!(support_closure(&f, &g, &t, &[1].into()).unwrap(), [0, 1, 2].into());
        assert_eq!(support_closure(&f, &g, &t, &BTreeSet::new()).unwrap(), [0].into());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let f = Rationals;
        let g = GroupData::cyclic(2).unwrap();
        let bad = CharacterTable {
            labels: vec!["a".into(), "b".into()],
            degrees: vec![1, 2],
            values: vec![vec![f.one(), f.one()], vec![f.from_i64(2), f.zero()]],
        };
        assert!(matches!(bad.validate(&f, &g), Err(Error::CharacterTable(_))));
        let not_orth = CharacterTable {
            labels: vec!["a".into(), "b".into()],
            degrees: vec![1, 1],
            values: vec![vec![f.one(), f.one()], vec![f.one(), f.one()]],
        };
        assert!(not_orth.validate(&f, &g).is_err());
        let f3 = PrimeField::new(3).unwrap();
        let g3 = GroupData::cyclic(3).unwrap();
        assert!(CharacterTable::cyclic(&f3, &g3, &1).is_err());
        assert!(CharacterTable::cyclic(&f, &g3, &f.one()).is_err());
    }

    #[test]
    fn values_with_roots() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(parse_character_value(&f, "w^2", Some(&2)).unwrap(), 4);
        assert_eq!(parse_character_value(&f, "-1", None).unwrap(), 6);
        assert!(parse_character_value(&f, "w", None).is_err());
    }
}
