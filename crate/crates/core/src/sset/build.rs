//! Standard models: simplices, minimal spheres, polygons, wedges and Moore spaces.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::product::{product, pushout, quotient, wedge};
use super::{FiniteSimplicialSet, SSetBuilder, SimplexRef};
use crate::error::{Error, Result};

/// Which standard model to build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "arg")]
pub enum BuildKind {
    /// The standard simplex `Δ[n]`.
    Simplex(usize),
    /// `S^n` with one vertex and one `n`-cell (`S^0` is two points).
    MinimalSphere(usize),
    /// `m` vertices and `m` edges `v_i → v_{i+1 mod m}`.
    Polygon(usize),
    /// A cycle of even length whose edges alternate in direction, so that it
    /// admits simplicial reflections.
    Zigzag(usize),
    Wedge(Vec<BuildKind>),
    /// `S^1 ∪_p e^2`, the cone of the degree-`p` map from `polygon(p)` to the minimal circle.
    Moore1(usize),
}

impl BuildKind {
    /// Parses `simplex:2`, `sphere:3`, `polygon:4`, `zigzag:4`, `moore:3`,
    /// `wedge:sphere:1,sphere:1`.
    pub fn parse(s: &str) -> Result<Self> {
        let (head, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = || -> Result<usize> {
            arg.trim().parse().map_err(|_| Error::Parse(format!("expected a number in `{s}`")))
        };
        Ok(match head.trim() {
            "simplex" => BuildKind::Simplex(num()?),
            "sphere" | "minimal_sphere" => BuildKind::MinimalSphere(num()?),
            "polygon" => BuildKind::Polygon(num()?),
            "zigzag" => BuildKind::Zigzag(num()?),
            "moore" => BuildKind::Moore1(num()?),
            "wedge" => BuildKind::Wedge(arg.split(',').map(BuildKind::parse).collect::<Result<_>>()?),
            other => return Err(Error::Parse(format!("unknown standard space `{other}`"))),
        })
    }

    pub fn label(&self) -> String {
        match self {
            BuildKind::Simplex(n) => format!("simplex({n})"),
            BuildKind::MinimalSphere(n) => format!("minimal_sphere({n})"),
            BuildKind::Polygon(m) => format!("polygon({m})"),
            BuildKind::Zigzag(m) => format!("zigzag({m})"),
            BuildKind::Wedge(parts) => format!("wedge({})", parts.iter().map(|p| p.label()).join(",")),
            BuildKind::Moore1(p) => format!("moore(1,{p})"),
        }
    }
}

pub fn build_standard(kind: &BuildKind) -> Result<FiniteSimplicialSet> {
    let k = match kind {
        BuildKind::Simplex(n) => simplex(*n)?,
        BuildKind::MinimalSphere(n) => minimal_sphere(*n)?,
        BuildKind::Polygon(m) => polygon(*m, false)?,
        BuildKind::Zigzag(m) => polygon(*m, true)?,
        BuildKind::Wedge(parts) => {
            let parts = parts.iter().map(build_standard).collect::<Result<Vec<_>>>()?;
            wedge(&parts)?
        }
        BuildKind::Moore1(p) => moore1(*p)?,
    };
    Ok(k.with_name(kind.label()))
}

fn simplex(n: usize) -> Result<FiniteSimplicialSet> {
    if n > 12 {
        return Err(Error::Resource(format!("simplex({n}) has too many faces")));
    }
    let name = |s: &[usize]| -> String {
        if n < 10 {
            s.iter().map(|v| v.to_string()).collect()
        } else {
            s.iter().map(|v| v.to_string()).join(",")
        }
    };
    let mut b = SSetBuilder::new();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    for d in 0..=n {
        for verts in (0..=n).combinations(d + 1) {
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut f = verts.clone();
                        f.remove(i);
                        SimplexRef::cell(ids[&f])
                    })
                    .collect()
            };
            let id = b.cell(name(&verts), d, faces);
            ids.insert(verts, id);
        }
    }
    b.build("simplex", None)
}

fn minimal_sphere(n: usize) -> Result<FiniteSimplicialSet> {
    let mut b = SSetBuilder::new();
    let v = b.vertex("v");
    if n == 0 {
        b.vertex("c");
    } else {
        let face = SimplexRef { cell: v, degens: (0..n - 1).rev().collect() };
        b.cell("c", n, vec![face; n + 1]);
    }
    b.build("sphere", Some(v))
}

fn polygon(m: usize, alternating: bool) -> Result<FiniteSimplicialSet> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("a polygon needs at least 3 vertices, got {m}")));
    }
    if alternating && m % 2 == 1 {
        return Err(Error::InvalidParameter(format!("a zigzag cycle needs an even length, got {m}")));
    }
    let mut b = SSetBuilder::new();
    let v: Vec<usize> = (0..m).map(|i| b.vertex(format!("v{i}"))).collect();
    for i in 0..m {
        let (from, to) = if alternating && i % 2 == 1 { (v[(i + 1) % m], v[i]) } else { (v[i], v[(i + 1) % m]) };
        b.cell(format!("e{i}"), 1, vec![SimplexRef::cell(to), SimplexRef::cell(from)]);
    }
    b.build("polygon", None)
}

fn moore1(p: usize) -> Result<FiniteSimplicialSet> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("a Moore space needs p ≥ 2, got {p}")));
    }
    let poly = polygon(p, false)?;
    let circle = minimal_sphere(1)?;
    let interval = simplex(1)?;
    let cyl = product(&poly, &interval, 2)?;
    let end = |t: usize| -> BTreeSet<usize> {
        let vertex = interval.cells_of_dim(0)[t];
        cyl.tuples
            .iter()
            .enumerate()
            .filter(|(_, tup)| tup[1].cell == vertex)
            .map(|(i, _)| i)
            .collect()
    };
    // glue the far end onto the circle, wrapping every edge once
    let far = end(1);
    let top = SimplexRef::cell(circle.cells_of_dim(1)[0]);
    let g: Vec<Option<SimplexRef>> = (0..cyl.set.num_cells())
        .map(|c| {
            far.contains(&c).then(|| match cyl.set.cell_dim(c) {
                0 => SimplexRef::cell(circle.basepoint().unwrap()),
                _ => top.clone(),
            })
        })
        .collect();
    let glued = pushout(&cyl.set, &far, &circle, &g, circle.basepoint())?;
    let near: BTreeSet<usize> = end(0).into_iter().map(|c| glued.from_x[c].unwrap()).collect();
    let cone = quotient(&glued.set, &near)?;
    // the basepoint of the circle becomes the basepoint of the Moore space
    let bp = cone.from_x[glued.from_y[circle.basepoint().unwrap()]].unwrap();
    cone.set.with_basepoint(Some(bp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_cell_counts() {
        let s3 = build_standard(&BuildKind::MinimalSphere(3)).unwrap();
        assert_eq!(s3.cell_counts(), vec![1, 0, 0, 1]);
        assert_eq!(s3.num_cells(), 2);
        let s0 = build_standard(&BuildKind::MinimalSphere(0)).unwrap();
        assert_eq!(s0.cell_counts(), vec![2]);
        let pt = build_standard(&BuildKind::Simplex(0)).unwrap();
        assert_eq!(pt.num_cells(), 1);
        assert_eq!(pt.dim(), 0);
    }

    #[test]
    fn simplex_counts() {
        let d3 = build_standard(&BuildKind::Simplex(3)).unwrap();
        assert_eq!(d3.cell_counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn polygon_and_zigzag() {
        let p = build_standard(&BuildKind::Polygon(5)).unwrap();
        assert_eq!(p.cell_counts(), vec![5, 5]);
        assert!(build_standard(&BuildKind::Polygon(2)).is_err());
        assert!(build_standard(&BuildKind::Zigzag(5)).is_err());
        assert_eq!(build_standard(&BuildKind::Zigzag(4)).unwrap().cell_counts(), vec![4, 4]);
    }

    #[test]
    fn moore_space_counts() {
        let m = build_standard(&BuildKind::Moore1(3)).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.cell_counts(), vec![2, 7, 6]);
        assert!(m.basepoint().is_some());
        assert!(build_standard(&BuildKind::Moore1(1)).is_err());
    }

    #[test]
    fn wedge_of_circles() {
        let w = build_standard(&BuildKind::parse("wedge:sphere:1,sphere:1,sphere:1").unwrap()).unwrap();
        assert_eq!(w.cell_counts(), vec![1, 3]);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(BuildKind::parse("moore:3").unwrap(), BuildKind::Moore1(3));
        assert!(BuildKind::parse("torus:1").is_err());
    }
}
