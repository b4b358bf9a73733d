//! The acceptance suite: one verdict per criterion, each computed from
//! scratch against an independent expectation.

use std::time::Instant;

use serde::Serialize;

use crate::chains::{Field, FieldSpec, PrimeField, Rationals};
use crate::error::Result;
use crate::grepr::{central_idempotents, theorem_checks_on, CharacterTable, Check};
use crate::kanop::{adjunction_check, CosimplicialSSet};
use crate::mapmodel::{check_model, CoefficientModel, FreeGCAlgebra, MappingModel, MappingOptions, Stabilization};
use crate::sset::{
    bockstein, build_standard, polygon_rotation, smash, switch_action, wedge_cycle, zigzag_reflection, BuildKind,
    FiniteSimplicialSet, SSetBuilder, SimplicialGroupAction,
};

/// Random homogeneous pairs per run for the product laws.
pub const LAW_PAIRS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("criterion {:>2} {} {}: {}", self.id, if self.pass { "PASS" } else { "FAIL" }, self.title, self.detail)
    }
}

/// Outcome of one mapping-space run together with its invariant checks.
#[derive(Clone, Debug)]
pub struct Run {
    pub name: String,
    pub betti: Vec<usize>,
    pub p_max: usize,
    pub stabilization: Stabilization,
    pub invariants: std::result::Result<String, String>,
}

pub fn lambda_x3(field: FieldSpec) -> CoefficientModel {
    CoefficientModel::tensor("Λ(x3)", field, 2, FreeGCAlgebra::exterior("x", 3).expect("valid generator"))
        .expect("Λ(x3) is 2-connected")
}

pub fn sphere3_simplicial() -> CoefficientModel {
    let l = build_standard(&BuildKind::MinimalSphere(3)).expect("standard model");
    CoefficientModel::simplicial("minimal S3", FieldSpec::Rationals, 2, l).expect("S3 is 2-connected")
}

fn std_set(kind: BuildKind) -> FiniteSimplicialSet {
    build_standard(&kind).expect("standard model")
}

/// Builds the model, checks the algebraic invariants on it and reruns with
/// two more columns.
pub fn run_model<F: Field>(
    field: &F,
    name: &str,
    k: &FiniteSimplicialSet,
    coeff: &CoefficientModel,
    max_degree: usize,
    options: MappingOptions,
) -> Result<(Run, MappingModel<F>)> {
    let model = MappingModel::build(field, k, coeff, max_degree, options)?;
    let p_max = model.columns.p_max();
    let betti = model.betti();
    let invariants = match check_model(&model, 7, LAW_PAIRS) {
        Ok(c) if c.leibniz_pairs >= LAW_PAIRS => Ok(format!(
            "{} Leibniz pairs, {} associativity triples",
            c.leibniz_pairs, c.associativity_triples
        )),
        Ok(c) => Err(format!("only {} Leibniz pairs", c.leibniz_pairs)),
        Err(e) => Err(e.to_string()),
    };
    let wider = MappingOptions { p_max: Some(p_max + 2), ..options };
    let again = MappingModel::build(field, k, coeff, max_degree, wider)?.betti();
    let stabilization = Stabilization { p_max: p_max + 2, stable: again == betti, betti: again };
    Ok((Run { name: name.to_string(), betti, p_max, stabilization, invariants }, model))
}

struct Suite {
    runs: Vec<Run>,
    algebra: Vec<(String, std::result::Result<(), String>)>,
}

fn outcome(id: usize, title: &str, r: Result<(bool, String)>) -> CriterionResult {
    match r {
        Ok((pass, detail)) => CriterionResult { id, title: title.into(), pass, detail },
        Err(e) => CriterionResult { id, title: title.into(), pass: false, detail: format!("error: {e}") },
    }
}

impl Suite {
    fn run(&mut self, name: &str, k: &FiniteSimplicialSet, coeff: &CoefficientModel, n: usize, pointed: bool) -> Result<Vec<usize>> {
        let opts = MappingOptions { pointed, ..Default::default() };
        let run = match coeff.field {
            FieldSpec::Rationals => run_model(&Rationals, name, k, coeff, n, opts)?.0,
            FieldSpec::PrimeField(p) => run_model(&PrimeField::new(p)?, name, k, coeff, n, opts)?.0,
        };
        let betti = run.betti.clone();
        self.runs.push(run);
        Ok(betti)
    }

    fn point(&mut self) -> Result<(bool, String)> {
        let b = self.run("Δ0", &std_set(BuildKind::Simplex(0)), &lambda_x3(FieldSpec::Rationals), 6, false)?;
        Ok((b == [1, 0, 0, 1, 0, 0, 0], format!("betti {b:?}")))
    }

    fn two_points(&mut self) -> Result<(bool, String)> {
        let k = std_set(BuildKind::MinimalSphere(0));
        let b = self.run("S0", &k, &lambda_x3(FieldSpec::Rationals), 6, false)?;
        let model = MappingModel::build(&Rationals, &k, &lambda_x3(FieldSpec::Rationals), 6, MappingOptions::default())?;
        let ring = model.ring_table()?;
        let product = |i: usize, j: usize| -> Option<bool> {
            ring.iter()
                .find(|e| e.left == (3, i) && e.right == (3, j))
                .map(|e| e.product.iter().any(|c| c != "0"))
        };
        let ring_ok = product(0, 0) == Some(false) && product(1, 1) == Some(false) && product(0, 1) == Some(true);
        Ok((
            b == [1, 0, 0, 2, 0, 0, 1] && ring_ok,
            format!("betti {b:?}, u·v ≠ 0: {:?}, u² = 0: {:?}, v² = 0: {:?}", product(0, 1), product(0, 0).map(|x| !x), product(1, 1).map(|x| !x)),
        ))
    }

    fn interval(&mut self) -> Result<(bool, String)> {
        let b = self.run("Δ1", &std_set(BuildKind::Simplex(1)), &lambda_x3(FieldSpec::Rationals), 6, false)?;
        Ok((b == [1, 0, 0, 1, 0, 0, 0], format!("betti {b:?}")))
    }

    fn free_loops(&mut self) -> Result<(bool, String)> {
        let start = Instant::now();
        let b = self.run("S1", &std_set(BuildKind::MinimalSphere(1)), &lambda_x3(FieldSpec::Rationals), 6, false)?;
        let secs = start.elapsed().as_secs_f64();
        Ok((b == [1, 0, 1, 1, 1, 1, 1] && secs <= 60.0, format!("betti {b:?}, within one minute: {}", secs <= 60.0)))
    }

    fn model_independence(&mut self) -> Result<(bool, String)> {
        let c = lambda_x3(FieldSpec::Rationals);
        let a = self.run("polygon(3)", &std_set(BuildKind::Polygon(3)), &c, 5, false)?;
        let b = self.run("S1 (N=5)", &std_set(BuildKind::MinimalSphere(1)), &c, 5, false)?;
        Ok((a == b && a == [1, 0, 1, 1, 1, 1], format!("polygon(3) {a:?}, minimal S1 {b:?}")))
    }

    fn backends(&mut self) -> Result<(bool, String)> {
        let mut ok = true;
        let mut detail = Vec::new();
        for kind in [BuildKind::Simplex(0), BuildKind::MinimalSphere(0)] {
            let k = std_set(kind.clone());
            let t = self.run(&format!("{} tensor", kind.label()), &k, &lambda_x3(FieldSpec::Rationals), 6, false)?;
            let s = self.run(&format!("{} simplicial", kind.label()), &k, &sphere3_simplicial(), 6, false)?;
            ok &= t == s;
            detail.push(format!("{}: tensor {t:?} simplicial {s:?}", kind.label()));
        }
        Ok((ok, detail.join("; ")))
    }

    fn adjunction(&mut self) -> Result<(bool, String)> {
        let pt = std_set(BuildKind::Simplex(0));
        let s1 = std_set(BuildKind::MinimalSphere(1));
        let mut three = SSetBuilder::new();
        for v in ["a", "b", "c"] {
            three.vertex(v);
        }
        let three = three.build("three points", None)?;
        let constant = CosimplicialSSet::constant(&pt, 1)?;
        let yoneda = CosimplicialSSet::yoneda(2)?;
        let reports = [
            adjunction_check(&pt, &constant, &std_set(BuildKind::Simplex(1)), 1)?,
            adjunction_check(&std_set(BuildKind::MinimalSphere(0)), &constant, &three, 1)?,
            adjunction_check(&s1, &yoneda, &s1, 2)?,
        ];
        let counts: Vec<(usize, usize)> = reports.iter().map(|r| (r.left_count, r.right_count)).collect();
        let ok = reports.iter().all(|r| r.bijection_ok) && counts == [(2, 2), (9, 9), (2, 2)];
        Ok((ok, format!("(left, right) counts {counts:?}, bijections {:?}", reports.iter().map(|r| r.bijection_ok).collect::<Vec<_>>())))
    }

    fn record_table<F: Field>(&mut self, name: &str, field: &F, action: &SimplicialGroupAction, table: &CharacterTable<F::Elem>) {
        let r = central_idempotents(field, &action.group, table).map(|_| ()).map_err(|e| e.to_string());
        self.algebra.push((format!("idempotents {name}"), r));
    }

    fn record_checks(&mut self, name: &str, checks: &[Check]) {
        for c in checks.iter().filter(|c| c.name == "completeness" || c.name == "schur_divisibility") {
            let r = if c.pass { Ok(()) } else { Err(c.detail.clone()) };
            self.algebra.push((format!("{} {name}", c.name), r));
        }
    }

    fn rotation(&mut self) -> Result<(bool, String)> {
        let f = PrimeField::new(7)?;
        let act = polygon_rotation(3)?;
        let table = CharacterTable::cyclic(&f, &act.group, &2)?;
        self.record_table("Z/3 over F7", &f, &act, &table);
        let coeff = lambda_x3(FieldSpec::PrimeField(7));
        let (run, model) = run_model(&f, "polygon(3) Z/3", act.space(), &coeff, 5, MappingOptions::default())?;
        self.runs.push(run);
        let r = theorem_checks_on(&model, act.space(), &act, &table, coeff.model_dependent())?;
        self.record_checks("rotation", &r.checks);
        let identity = r.checks.iter().filter(|c| c.name.starts_with("identity_action")).all(|c| c.pass)
            && r.checks.iter().any(|c| c.name.starts_with("identity_action"));
        let trivial = r.mapping.support.iter().all(|&i| i == 0);
        let tensor = r.checks.iter().any(|c| c.name == "tensor_powers_trivial" && c.pass);
        Ok((
            identity && trivial && tensor && r.passed(),
            format!(
                "identity matrices {identity}, support {:?}, tensor powers trivial {tensor}, betti {:?}",
                r.mapping.support, r.betti
            ),
        ))
    }

    fn splittings(&mut self) -> Result<(bool, String)> {
        let q = Rationals;
        let act = zigzag_reflection(4)?;
        let table = CharacterTable::cyclic(&q, &act.group, &q.from_i64(-1))?;
        self.record_table("Z/2 over Q", &q, &act, &table);
        let coeff = lambda_x3(FieldSpec::Rationals);
        let (run, model) = run_model(&q, "zigzag(4) Z/2", act.space(), &coeff, 5, MappingOptions::default())?;
        self.runs.push(run);
        let r = theorem_checks_on(&model, act.space(), &act, &table, false)?;
        self.record_checks("reflection", &r.checks);
        let sums = r.mapping.components.iter().all(|(n, d)| d.iter().sum::<usize>() == r.betti[*n as usize]);
        let inside = r.mapping.support.is_subset(&r.closure) && r.closure == [0, 1].into();

        let f7 = PrimeField::new(7)?;
        let w = wedge_cycle(3, 1)?;
        let table7 = CharacterTable::cyclic(&f7, &w.group, &2)?;
        self.record_table("Z/3 on wedge over F7", &f7, &w, &table7);
        let coeff7 = lambda_x3(FieldSpec::PrimeField(7));
        let (run, model) = run_model(&f7, "wedge of 3 circles Z/3", w.space(), &coeff7, 4, MappingOptions::default())?;
        self.runs.push(run);
        let r7 = theorem_checks_on(&model, w.space(), &w, &table7, coeff7.model_dependent())?;
        self.record_checks("wedge", &r7.checks);
        let inside7 = r7.mapping.support.is_subset(&[0, 1, 2].into()) && r7.passed();
        Ok((
            sums && inside && r.passed() && inside7 && r7.model_dependent,
            format!(
                "reflection: components {:?}, closure {:?}; wedge over F7 (model-dependent): support {:?}, components {:?}",
                r.mapping.components, r.closure, r7.mapping.support, r7.mapping.components
            ),
        ))
    }

    fn moore(&mut self) -> Result<(bool, String)> {
        let f = PrimeField::new(3)?;
        let m = std_set(BuildKind::Moore1(3));
        let sm = smash(&m, &m)?;
        let act = SimplicialGroupAction::cyclic(switch_action(&sm)?, 2)?;
        let table = CharacterTable::cyclic(&f, &act.group, &2)?;
        self.record_table("switch over F3", &f, &act, &table);
        let r = crate::grepr::source_isotypic(&f, &sm.set, &act, &table)?;
        let complete = r.is_complete() && r.schur_divisible(&table.degrees);
        self.algebra.push(("completeness smash".into(), if complete { Ok(()) } else { Err("incomplete".into()) }));
        let dims: Vec<usize> = (2..=4).map(|n| r.totals.get(&n).copied().unwrap_or(0)).collect();
        // the split of reduced homology, so the basepoint class in degree 0 is left out
        let mut pair: Vec<Vec<i64>> = (0..2).map(|i| r.distribution(i).into_keys().filter(|&n| n > 0).collect()).collect();
        let sizes: Vec<usize> =
            (0..2).map(|i| r.distribution(i).iter().filter(|(n, _)| **n > 0).map(|(_, d)| d).sum()).collect();
        pair.sort();
        let beta = bockstein(&m, 3, 2)?;
        let iso = beta.len() == 1 && beta[0].len() == 1 && beta[0][0] != 0;
        Ok((
            dims == [1, 2, 1] && pair == [vec![2, 3], vec![3, 4]] && sizes == [2, 2] && iso,
            format!("dims in degrees 2..4 {dims:?}, component degrees {pair:?} of sizes {sizes:?}, Bockstein {beta:?}"),
        ))
    }

    fn invariants(&self) -> (bool, String) {
        let mut failures = Vec::new();
        for run in &self.runs {
            if let Err(e) = &run.invariants {
                failures.push(format!("{}: {e}", run.name));
            }
            if !run.stabilization.stable {
                failures.push(format!(
                    "{}: betti {:?} at p_max {} but {:?} at {}",
                    run.name, run.betti, run.p_max, run.stabilization.betti, run.stabilization.p_max
                ));
            }
        }
        for (name, r) in &self.algebra {
            if let Err(e) = r {
                failures.push(format!("{name}: {e}"));
            }
        }
        let detail = if failures.is_empty() {
            format!("{} runs and {} algebraic checks clean", self.runs.len(), self.algebra.len())
        } else {
            failures.join("; ")
        };
        (failures.is_empty() && !self.runs.is_empty(), detail)
    }
}

/// Runs every acceptance criterion in order, reporting each as it finishes.
pub fn run_acceptance(mut on_result: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut suite = Suite { runs: Vec::new(), algebra: Vec::new() };
    let mut out = Vec::new();
    let mut push = |r: CriterionResult, out: &mut Vec<CriterionResult>| {
        on_result(&r);
        out.push(r);
    };
    push(outcome(1, "point source", suite.point()), &mut out);
    push(outcome(2, "two-point source and ring", suite.two_points()), &mut out);
    push(outcome(3, "contractible source", suite.interval()), &mut out);
    push(outcome(4, "free loops on S3", suite.free_loops()), &mut out);
    push(outcome(5, "model independence", suite.model_independence()), &mut out);
    push(outcome(6, "backend agreement", suite.backends()), &mut out);
    push(outcome(7, "adjunction", suite.adjunction()), &mut out);
    let c9 = outcome(9, "trivial action on the source", suite.rotation());
    let c10 = outcome(10, "isotypic support", suite.splittings());
    let c11 = outcome(11, "Moore space split", suite.moore());
    let (pass, detail) = suite.invariants();
    push(CriterionResult { id: 8, title: "invariant suite".into(), pass, detail }, &mut out);
    push(c9, &mut out);
    push(c10, &mut out);
    push(c11, &mut out);
    out
}
