//! Finite groups given by multiplication tables.

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite group: element names, multiplication table (`mult[a][b] = ab`),
/// inverses and conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupData {
    names: Vec<String>,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl GroupData {
    /// Validates the group axioms. When `classes` is `None` the conjugacy
    /// classes are computed, ordered by their smallest element.
    pub fn new(names: Vec<String>, mult: Vec<Vec<usize>>, classes: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Group("a group needs at least one element".into()));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Group(format!("multiplication table must be {n}×{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::Group("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or_else(|| Error::Group(format!("`{}` has no inverse", names[a])))?;
            inverse.push(b);
        }
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 24 {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            // a deterministic sample of triples for large tables
            Box::new((0..4096usize).map(move |i| ((i * 7919) % n, (i * 104_729 + 1) % n, (i * 1_299_709 + 2) % n)))
        };
        for (a, b, c) in triples {
            if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                return Err(Error::Group(format!(
                    "multiplication is not associative on ({}, {}, {})",
                    names[a], names[b], names[c]
                )));
            }
        }
        let classes = match classes {
            Some(c) => c,
            None => {
                let mut seen = vec![false; n];
                let mut out = Vec::new();
                for a in 0..n {
                    if seen[a] {
                        continue;
                    }
                    let mut class: Vec<usize> = (0..n).map(|g| mult[mult[g][a]][inverse[g]]).collect();
                    class.sort_unstable();
                    class.dedup();
                    for &x in &class {
                        seen[x] = true;
                    }
                    out.push(class);
                }
                out
            }
        };
        let mut class_of = vec![usize::MAX; n];
        for (ci, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::Group("conjugacy classes do not partition the group".into()));
                }
                class_of[x] = ci;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::Group("conjugacy classes do not cover the group".into()));
        }
        for a in 0..n {
            for g in 0..n {
                let c = mult[mult[g][a]][inverse[g]];
                if class_of[c] != class_of[a] {
                    return Err(Error::Group(format!(
                        "class of `{}` is not closed under conjugation by `{}`",
                        names[a], names[g]
                    )));
                }
            }
        }
        Ok(GroupData { names, mult, identity, inverse, classes, class_of })
    }

    /// The cyclic group of order `n` with elements `e, g, g^2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("cyclic group of order 0".into()));
        }
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let classes = (0..n).map(|a| vec![a]).collect();
        GroupData::new(names, mult, Some(classes))
    }

    pub fn trivial() -> Self {
        GroupData::cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }
}
