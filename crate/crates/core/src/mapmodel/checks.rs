//! Randomized and exhaustive invariant checks on an assembled model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MappingModel;
use crate::chains::{Field, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModelChecks {
    pub leibniz_pairs: usize,
    pub associativity_triples: usize,
    pub unit_checks: usize,
}

fn random_block<F: Field>(
    model: &MappingModel<F>,
    rng: &mut ChaCha8Rng,
    n: i64,
) -> Option<(usize, SparseVec<F::Elem>)> {
    let f = &model.field;
    let blocks = model.total.layout.get(&n)?;
    if blocks.is_empty() {
        return None;
    }
    let &(p, q, off) = &blocks[rng.gen_range(0..blocks.len())];
    let d = model.columns.dim(p, q);
    let terms = rng.gen_range(1..=d.min(3));
    let pairs = (0..terms).map(|_| (off + rng.gen_range(0..d), f.from_i64(rng.gen_range(-2..=2))));
    let v = SparseVec::from_pairs(f, pairs);
    (!v.is_zero()).then_some((p, v))
}

/// Checks the bicomplex identities, the cosimplicial face identities, and on
/// `pairs` random homogeneous elements the unit, Leibniz and associativity laws.
pub fn check_model<F: Field>(model: &MappingModel<F>, seed: u64, pairs: usize) -> Result<ModelChecks> {
    let f = &model.field;
    model.bicomplex.check_invariants(f)?;
    model.columns.check_face_identities()?;
    model.total.complex.check_d_squared(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = model.max_degree as i64;
    let (lo, _) = model.total.complex.range();
    let degrees: Vec<i64> = (lo..=top).filter(|&n| model.dim(n) > 0).collect();
    let mut out = ModelChecks::default();
    if degrees.is_empty() {
        return Ok(out);
    }
    let unit = model.unit();
    let mut attempts = 0;
    while out.leibniz_pairs < pairs && attempts < pairs * 50 {
        attempts += 1;
        let n1 = degrees[rng.gen_range(0..degrees.len())];
        let n2 = degrees[rng.gen_range(0..degrees.len())];
        if n1 + n2 + 1 > top + 1 {
            continue;
        }
        let (Some((p1, x)), Some((p2, y))) = (random_block(model, &mut rng, n1), random_block(model, &mut rng, n2)) else {
            continue;
        };
        if p1 + p2 > model.columns.p_max() {
            continue;
        }
        // 1·x = x·1 = x
        if model.product((0, &unit), (n1, &x))? != x || model.product((n1, &x), (0, &unit))? != x {
            return Err(Error::Malformed(format!("unit law fails in degree {n1}")));
        }
        out.unit_checks += 1;
        let xy = model.product((n1, &x), (n2, &y))?;
        let lhs = model.differential(n1 + n2, &xy)?;
        let a = model.product((n1 + 1, &model.differential(n1, &x)?), (n2, &y))?;
        let b = model.product((n1, &x), (n2 + 1, &model.differential(n2, &y)?))?;
        let rhs = if n1.rem_euclid(2) == 0 { a.add(f, &b) } else { a.sub(f, &b) };
        if lhs != rhs {
            return Err(Error::Malformed(format!("Leibniz rule fails for degrees ({n1}, {n2})")));
        }
        out.leibniz_pairs += 1;
        let n3 = degrees[rng.gen_range(0..degrees.len())];
        if n1 + n2 + n3 > top + 1 {
            continue;
        }
        let Some((p3, z)) = random_block(model, &mut rng, n3) else { continue };
        if p1 + p2 + p3 > model.columns.p_max() {
            continue;
        }
        let left = model.product((n1 + n2, &xy), (n3, &z))?;
        let yz = model.product((n2, &y), (n3, &z))?;
        let right = model.product((n1, &x), (n2 + n3, &yz))?;
        if left != right {
            return Err(Error::Malformed(format!("product is not associative in degrees ({n1}, {n2}, {n3})")));
        }
        out.associativity_triples += 1;
    }
    Ok(out)
}
