//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; failures come back as `{"error": ...}`.

use mapspace::chains::{Field, FieldSpec, PrimeField, Rationals};
use mapspace::kanop::{adjunction_check, CosimplicialSSet};
use mapspace::mapmodel::{MappingModel, MappingOptions};
use mapspace::sset::{build_standard, homology, BuildKind, FiniteSimplicialSet};
use mapspace::verify::lambda_x3;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn source(kind: &str) -> mapspace::Result<FiniteSimplicialSet> {
    build_standard(&BuildKind::parse(kind)?)
}

fn render(r: mapspace::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn betti_over<F: Field>(field: &F, k: &FiniteSimplicialSet) -> mapspace::Result<Vec<usize>> {
    Ok(homology(field, k)?.dims)
}

/// Betti numbers of a builtin simplicial set such as `moore:3`.
pub fn homology_json(kind: &str, field: &str) -> String {
    render((|| {
        let k = source(kind)?;
        let spec = FieldSpec::parse(field)?;
        let betti = match spec {
            FieldSpec::Rationals => betti_over(&Rationals, &k)?,
            FieldSpec::PrimeField(p) => betti_over(&PrimeField::new(p)?, &k)?,
        };
        Ok(json!({ "source": k.name(), "field": spec.to_string(), "betti": betti, "cells": k.cell_counts() }))
    })())
}

fn mapping_over<F: Field>(field: &F, k: &FiniteSimplicialSet, spec: FieldSpec, max_degree: usize, pointed: bool) -> mapspace::Result<Value> {
    let coeff = lambda_x3(spec);
    let options = MappingOptions { pointed, reversed: false, p_max: None };
    let model = MappingModel::build(field, k, &coeff, max_degree, options)?;
    let p_max = model.columns.p_max();
    let betti = model.betti();
    let wider = MappingOptions { p_max: Some(p_max + 2), ..options };
    let again = MappingModel::build(field, k, &coeff, max_degree, wider)?.betti();
    Ok(json!({
        "source": k.name(),
        "coefficients": coeff.name,
        "field": spec.to_string(),
        "pointed": pointed,
        "p_max": p_max,
        "betti": betti,
        "stable": again == betti,
    }))
}

/// Cohomology of maps from a builtin set into a model of `S^3`.
pub fn mapping_json(kind: &str, field: &str, max_degree: usize, pointed: bool) -> String {
    render((|| {
        let k = source(kind)?;
        let spec = FieldSpec::parse(field)?;
        match spec {
            FieldSpec::Rationals => mapping_over(&Rationals, &k, spec, max_degree, pointed),
            FieldSpec::PrimeField(p) => mapping_over(&PrimeField::new(p)?, &k, spec, max_degree, pointed),
        }
    })())
}

/// Counts both sides of the tensor/hom adjunction. `cosimplicial` is
/// `yoneda` or `constant-point`.
pub fn adjunction_json(kind: &str, cosimplicial: &str, target: &str, trunc: usize) -> String {
    render((|| {
        let k = source(kind)?;
        let x = source(target)?;
        let z = match cosimplicial {
            "yoneda" => CosimplicialSSet::yoneda(trunc)?,
            "constant-point" => CosimplicialSSet::constant(&build_standard(&BuildKind::Simplex(0))?, trunc)?,
            other => return Err(mapspace::Error::InvalidParameter(format!("unknown cosimplicial object `{other}`"))),
        };
        let r = adjunction_check(&k, &z, &x, trunc)?;
        Ok(json!({
            "source": r.source,
            "cosimplicial": r.cosimplicial,
            "target": r.target,
            "trunc": r.trunc,
            "left_count": r.left_count,
            "right_count": r.right_count,
            "bijection": r.bijection_ok,
        }))
    })())
}

#[wasm_bindgen]
pub fn homology_of(kind: &str, field: &str) -> String {
    homology_json(kind, field)
}

#[wasm_bindgen]
pub fn mapping_betti(kind: &str, field: &str, max_degree: usize, pointed: bool) -> String {
    mapping_json(kind, field, max_degree, pointed)
}

#[wasm_bindgen]
pub fn adjunction(kind: &str, cosimplicial: &str, target: &str, trunc: usize) -> String {
    adjunction_json(kind, cosimplicial, target, trunc)
}
