//! JSON input files and the report format.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chains::{Field, FieldSpec};
use crate::error::{Error, Result};
use crate::grepr::{CharacterTable, Check, GroupData, IsotypicReport};
use crate::mapmodel::{CoefficientModel, FreeGCAlgebra, RingEntry, Stabilization};
use crate::sset::{Cell, FiniteSimplicialSet, SimplexRef, SimplicialGroupAction, SimplicialMap};

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceFile {
    pub cell: String,
    #[serde(default)]
    pub degens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellFile {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<FaceFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetFile {
    pub name: String,
    #[serde(default)]
    pub pointed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    pub cells: Vec<CellFile>,
}

impl SSetFile {
    pub fn from_set(k: &FiniteSimplicialSet) -> Self {
        let name = |c: usize| k.cell(c).name.clone();
        SSetFile {
            name: k.name().to_string(),
            pointed: k.is_pointed(),
            basepoint: k.basepoint().map(name),
            cells: k
                .cells()
                .iter()
                .map(|c| CellFile {
                    id: c.name.clone(),
                    dim: c.dim,
                    faces: c.faces.iter().map(|f| FaceFile { cell: name(f.cell), degens: f.degens.clone() }).collect(),
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteSimplicialSet> {
        let ids: HashMap<&str, usize> = self.cells.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let lookup = |id: &str| -> Result<usize> {
            ids.get(id).copied().ok_or_else(|| Error::Malformed(format!("unknown cell `{id}` in {}", self.name)))
        };
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let faces = c
                    .faces
                    .iter()
                    .map(|f| Ok(SimplexRef { cell: lookup(&f.cell)?, degens: f.degens.clone() }))
                    .collect::<Result<_>>()?;
                Ok(Cell { name: c.id.clone(), dim: c.dim, faces })
            })
            .collect::<Result<Vec<_>>>()?;
        let basepoint = match (&self.basepoint, self.pointed) {
            (Some(b), _) => Some(lookup(b)?),
            (None, true) => Some(
                self.cells
                    .iter()
                    .position(|c| c.dim == 0)
                    .ok_or_else(|| Error::Malformed(format!("{} is pointed but has no vertex", self.name)))?,
            ),
            (None, false) => None,
        };
        FiniteSimplicialSet::new(self.name.clone(), cells, basepoint)
    }
}

pub fn parse_sset(text: &str) -> Result<FiniteSimplicialSet> {
    serde_json::from_str::<SSetFile>(text).map_err(parse_err)?.build()
}

pub fn sset_to_json(k: &FiniteSimplicialSet) -> String {
    serde_json::to_string_pretty(&SSetFile::from_set(k)).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub degree: usize,
}

/// Coefficient files, distinguished by `"backend"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case")]
pub enum CoeffFile {
    Tensor {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        field: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
        connectivity: usize,
        generators: Vec<GeneratorFile>,
        /// Generator name → list of `[coefficient, [[generator, exponent], …]]`.
        #[serde(default)]
        differential: BTreeMap<String, Vec<(Value, Vec<(String, u32)>)>>,
    },
    Simplicial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default = "default_field")]
        field: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
        connectivity: usize,
        target: SSetFile,
    },
}

fn default_field() -> String {
    "Q".into()
}

fn field_spec(field: &str, p: Option<u64>) -> Result<FieldSpec> {
    match (field.trim(), p) {
        ("Fp" | "fp" | "F_p", Some(p)) => {
            let spec = FieldSpec::PrimeField(p);
            spec.validate()?;
            Ok(spec)
        }
        ("Fp" | "fp" | "F_p", None) => Err(Error::Parse("field `Fp` needs a prime `p`".into())),
        (other, _) => FieldSpec::parse(other),
    }
}

fn coefficient(v: &Value) -> Result<BigRational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("coefficient {other} is not a number"))),
    };
    let (num, den) = text.split_once('/').unwrap_or((&text, "1"));
    let parse = |s: &str| s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{text}`")));
    let den: num_bigint::BigInt = parse(den)?;
    if den == 0.into() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(BigRational::new(parse(num)?, den))
}

impl CoeffFile {
    pub fn build(&self) -> Result<CoefficientModel> {
        match self {
            CoeffFile::Tensor { name, field, p, connectivity, generators, differential } => {
                let spec = field_spec(field, *p)?;
                let index: HashMap<&str, usize> =
                    generators.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
                for g in differential.keys() {
                    if !index.contains_key(g.as_str()) {
                        return Err(Error::Coefficients(format!("differential of unknown generator `{g}`")));
                    }
                }
                let d = generators
                    .iter()
                    .map(|g| {
                        differential
                            .get(&g.name)
                            .map(|terms| {
                                terms
                                    .iter()
                                    .map(|(c, powers)| {
                                        let mut mono = vec![0u32; generators.len()];
                                        for (h, e) in powers {
                                            let i = index.get(h.as_str()).ok_or_else(|| {
                                                Error::Coefficients(format!("unknown generator `{h}` in d{}", g.name))
                                            })?;
                                            mono[*i] += e;
                                        }
                                        Ok((coefficient(c)?, mono))
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .transpose()
                            .map(|v| v.unwrap_or_default())
                    })
                    .collect::<Result<Vec<_>>>()?;
                let a = FreeGCAlgebra::new(generators.iter().map(|g| (g.name.clone(), g.degree)).collect(), d)?;
                let label = name.clone().unwrap_or_else(|| {
                    format!("Λ({})", generators.iter().map(|g| format!("{}{}", g.name, g.degree)).collect::<Vec<_>>().join(","))
                });
                CoefficientModel::tensor(label, spec, *connectivity, a)
            }
            CoeffFile::Simplicial { name, field, p, connectivity, target } => {
                let spec = field_spec(field, *p)?;
                let l = target.build()?;
                let label = name.clone().unwrap_or_else(|| l.name().to_string());
                CoefficientModel::simplicial(label, spec, *connectivity, l)
            }
        }
    }
}

pub fn parse_coefficients(text: &str) -> Result<CoefficientModel> {
    serde_json::from_str::<CoeffFile>(text).map_err(parse_err)?.build()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CharacterFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub degree: usize,
    pub values: Vec<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ActionFile {
    pub cells: BTreeMap<String, FaceFile>,
}

/// A group, its character table and an action on a source set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub elements: Vec<String>,
    /// Entries are element names or indices.
    pub mult: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<String>>>,
    /// Value of `w` in character entries such as `"w^2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    pub characters: Vec<CharacterFile>,
    /// Element → images of the cells it moves; unlisted cells are fixed.
    #[serde(default)]
    pub action: BTreeMap<String, ActionFile>,
}

/// Parsed group data with the character table over a concrete field.
pub struct GroupInput<E> {
    pub action: SimplicialGroupAction,
    pub table: CharacterTable<E>,
}

impl GroupFile {
    pub fn group(&self) -> Result<GroupData> {
        let index: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let element = |v: &Value| -> Result<usize> {
            match v {
                Value::Number(n) => n.as_u64().map(|x| x as usize).ok_or_else(|| Error::Group(format!("bad index {n}"))),
                Value::String(s) => index.get(s.as_str()).copied().ok_or_else(|| Error::Group(format!("unknown element `{s}`"))),
                other => Err(Error::Group(format!("bad table entry {other}"))),
            }
        };
        let mult = self.mult.iter().map(|r| r.iter().map(element).collect()).collect::<Result<_>>()?;
        let classes = self
            .classes
            .as_ref()
            .map(|cs| {
                cs.iter()
                    .map(|c| c.iter().map(|e| element(&Value::String(e.clone()))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        GroupData::new(self.elements.clone(), mult, classes)
    }

    pub fn load<F: Field>(&self, field: &F, k: &FiniteSimplicialSet) -> Result<GroupInput<F::Elem>> {
        let group = self.group()?;
        let root = self.root.as_deref().map(|r| field.parse(r)).transpose()?;
        let value = |v: &Value| -> Result<F::Elem> {
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(Error::CharacterTable(format!("bad character value {other}"))),
            };
            crate::grepr::parse_character_value(field, &s, root.as_ref())
        };
        let table = CharacterTable {
            labels: self
                .characters
                .iter()
                .enumerate()
                .map(|(i, c)| c.label.clone().unwrap_or_else(|| if i == 0 { "trivial".into() } else { format!("chi{i}") }))
                .collect(),
            degrees: self.characters.iter().map(|c| c.degree).collect(),
            values: self.characters.iter().map(|c| c.values.iter().map(value).collect()).collect::<Result<_>>()?,
        };
        table.validate(field, &group)?;
        for e in self.action.keys() {
            if group.index_of(e).is_none() {
                return Err(Error::Group(format!("action given for unknown element `{e}`")));
            }
        }
        let maps = group
            .names()
            .iter()
            .map(|e| {
                let mut images: Vec<SimplexRef> = (0..k.num_cells()).map(SimplexRef::cell).collect();
                if let Some(a) = self.action.get(e) {
                    for (cell, image) in &a.cells {
                        let c = k.lookup(cell).ok_or_else(|| Error::Group(format!("`{e}` moves unknown cell `{cell}`")))?;
                        let target = k
                            .lookup(&image.cell)
                            .ok_or_else(|| Error::Group(format!("`{e}` sends `{cell}` to unknown cell `{}`", image.cell)))?;
                        images[c] = SimplexRef::new(target, image.degens.clone());
                    }
                }
                SimplicialMap::new(k.clone(), k.clone(), images)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupInput { action: SimplicialGroupAction { group, maps }, table })
    }

    /// The file describing a given action with a cyclic character table in powers of `w`.
    pub fn cyclic(action: &SimplicialGroupAction, root: &str) -> Self {
        let g = &action.group;
        let n = g.order();
        let k = action.space();
        let name = |c: usize| k.cell(c).name.clone();
        GroupFile {
            elements: g.names().to_vec(),
            mult: g.table().iter().map(|r| r.iter().map(|&x| Value::String(g.names()[x].clone())).collect()).collect(),
            classes: Some(g.classes().iter().map(|c| c.iter().map(|&x| g.names()[x].clone()).collect()).collect()),
            root: Some(root.to_string()),
            characters: (0..n)
                .map(|i| CharacterFile {
                    label: Some(if i == 0 { "trivial".into() } else { format!("chi{i}") }),
                    degree: 1,
                    values: g.classes().iter().map(|c| Value::String(format!("w^{}", (i * c[0]) % n))).collect(),
                })
                .collect(),
            action: g
                .names()
                .iter()
                .zip(&action.maps)
                .filter(|(_, m)| !m.is_identity())
                .map(|(e, m)| {
                    let cells = m
                        .images()
                        .iter()
                        .enumerate()
                        .filter(|(c, s)| s.cell != *c || s.is_degenerate())
                        .map(|(c, s)| (name(c), FaceFile { cell: name(s.cell), degens: s.degens.clone() }))
                        .collect();
                    (e.clone(), ActionFile { cells })
                })
                .collect(),
        }
    }
}

pub fn parse_group(text: &str) -> Result<GroupFile> {
    serde_json::from_str(text).map_err(parse_err)
}

/// Every effective parameter of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub command: String,
    pub source: Option<String>,
    pub coefficients: Option<String>,
    pub field: Option<String>,
    pub backend: Option<String>,
    pub max_degree: Option<usize>,
    pub pmax_policy: Option<String>,
    pub p_max: Option<usize>,
    pub pointed: bool,
    pub group: Option<String>,
    pub model_dependent: bool,
}

/// The report written by every command, fields in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub params: Params,
    pub betti: Vec<usize>,
    pub ring: Vec<RingEntry>,
    pub isotypic: BTreeMap<i64, BTreeMap<String, usize>>,
    pub stabilization: Option<Stabilization>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.stabilization.as_ref().is_none_or(|s| s.stable)
    }

    pub fn set_isotypic(&mut self, r: &IsotypicReport) {
        self.isotypic = r
            .components
            .iter()
            .map(|(n, dims)| (*n, r.labels.iter().cloned().zip(dims.iter().copied()).collect()))
            .collect();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::PrimeField;
    use crate::sset::{build_standard, polygon_rotation, BuildKind};

    #[test]
    fn sset_roundtrip() {
        for kind in [BuildKind::Moore1(3), BuildKind::MinimalSphere(1), BuildKind::Simplex(2)] {
            let k = build_standard(&kind).unwrap();
            let back = parse_sset(&sset_to_json(&k)).unwrap();
            assert_eq!(back, k);
        }
        assert!(matches!(parse_sset("{\"name\": 1}"), Err(Error::Parse(_))));
        let bad = r#"{"name":"x","cells":[{"id":"e","dim":1,"faces":[{"cell":"v"},{"cell":"v"}]}]}"#;
        assert!(matches!(parse_sset(bad), Err(Error::Malformed(_))));
    }

    #[test]
    fn coefficient_files() {
        let text = r#"{"backend":"tensor","field":"Q","connectivity":1,
            "generators":[{"name":"y","degree":2},{"name":"x","degree":3}],
            "differential":{"x":[[1,[["y",2]]]]}}"#;
        let c = parse_coefficients(text).unwrap();
        assert_eq!(c.connectivity, 1);
        let text = r#"{"backend":"tensor","field":"Fp","p":7,"connectivity":2,"generators":[{"name":"x","degree":3}]}"#;
        assert!(parse_coefficients(text).unwrap().model_dependent());
        let text = r#"{"backend":"tensor","field":"Fp","connectivity":2,"generators":[{"name":"x","degree":3}]}"#;
        assert!(matches!(parse_coefficients(text), Err(Error::Parse(_))));
        let s3 = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
        let text = format!(
            r#"{{"backend":"simplicial","connectivity":2,"target":{}}}"#,
            serde_json::to_string(&SSetFile::from_set(&s3)).unwrap()
        );
        assert!(!parse_coefficients(&text).unwrap().model_dependent());
    }

    #[test]
    fn group_file_roundtrip() {
        let f = PrimeField::new(7).unwrap();
        let act = polygon_rotation(3).unwrap();
        let file = GroupFile::cyclic(&act, "2");
        let text = serde_json::to_string(&file).unwrap();
        let input = parse_group(&text).unwrap().load(&f, act.space()).unwrap();
        assert_eq!(input.action.maps, act.maps);
        assert_eq!(input.table, CharacterTable::cyclic(&f, &act.group, &2).unwrap());
    }
}
