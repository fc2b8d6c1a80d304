//! Meshes of linear elements: uniform lines, structured quadrilaterals and
//! tetrahedralized cylinders, plus shape functions, quadrature and the
//! element metric tensor.

mod generate;
mod io;
mod shape;

pub use generate::{cylinder_tet_3d, structured_quad_2d, uniform_1d};
pub use io::{read_mesh, write_mesh};
pub use shape::{
    element_quadrature, gauss_legendre, metric_tensor, shape_functions, MetricTensor, QuadPoint, Rule,
};

use crate::error::{arg, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

/// Supported element types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    Line2,
    Quad4,
    Tet4,
}

impl ElementKind {
    pub fn dim(self) -> usize {
        match self {
            ElementKind::Line2 => 1,
            ElementKind::Quad4 => 2,
            ElementKind::Tet4 => 3,
        }
    }

    pub fn nodes_per_element(self) -> usize {
        match self {
            ElementKind::Line2 => 2,
            ElementKind::Quad4 => 4,
            ElementKind::Tet4 => 4,
        }
    }

    /// Local node lists of the element faces.
    pub fn faces(self) -> &'static [&'static [usize]] {
        match self {
            ElementKind::Line2 => &[&[0], &[1]],
            ElementKind::Quad4 => &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
            ElementKind::Tet4 => &[&[1, 2, 3], &[0, 3, 2], &[0, 1, 3], &[0, 2, 1]],
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementKind::Line2 => "line2",
            ElementKind::Quad4 => "quad4",
            ElementKind::Tet4 => "tet4",
        };
        f.write_str(s)
    }
}

impl FromStr for ElementKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line2" => Ok(ElementKind::Line2),
            "quad4" => Ok(ElementKind::Quad4),
            "tet4" => Ok(ElementKind::Tet4),
            _ => arg(format!("unknown element kind {s:?}")),
        }
    }
}

/// Unstructured mesh of a single element kind with named boundary node sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub kind: ElementKind,
    /// Node coordinates, unused trailing components are zero.
    pub nodes: Vec<[f64; 3]>,
    pub elements: Vec<Vec<usize>>,
    pub node_sets: BTreeMap<String, Vec<usize>>,
}

impl Mesh {
    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn node_set(&self, name: &str) -> Result<&[usize]> {
        self.node_sets
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::Config(format!("mesh has no boundary set {name:?}")))
    }

    /// Coordinates of the nodes of element `e`.
    pub fn element_coords(&self, e: usize) -> Vec<[f64; 3]> {
        self.elements[e].iter().map(|&n| self.nodes[n]).collect()
    }

    /// Exterior faces whose nodes all belong to the named set.
    pub fn boundary_faces(&self, name: &str) -> Result<Vec<Vec<usize>>> {
        let set: std::collections::HashSet<usize> = self.node_set(name)?.iter().copied().collect();
        let mut count: HashMap<Vec<usize>, (usize, Vec<usize>)> = HashMap::new();
        for el in &self.elements {
            for f in self.kind.faces() {
                let face: Vec<usize> = f.iter().map(|&l| el[l]).collect();
                let mut key = face.clone();
                key.sort_unstable();
                count.entry(key).or_insert((0, face)).0 += 1;
            }
        }
        let mut out: Vec<Vec<usize>> = count
            .into_values()
            .filter(|(c, face)| *c == 1 && face.iter().all(|n| set.contains(n)))
            .map(|(_, face)| face)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Measure (count, length or area) of a boundary face.
    pub fn face_measure(&self, face: &[usize]) -> f64 {
        let p = |i: usize| self.nodes[face[i]];
        match face.len() {
            1 => 1.0,
            2 => dist(p(0), p(1)),
            3 => {
                let u = sub(p(1), p(0));
                let v = sub(p(2), p(0));
                0.5 * norm(cross(u, v))
            }
            _ => 0.0,
        }
    }

    /// Signed measure of element `e` (length, area or volume).
    pub fn element_measure(&self, e: usize) -> Result<f64> {
        Ok(element_quadrature(self, e, Rule::Standard)?.iter().map(|q| q.weight).sum())
    }

    /// Length of a 1D element.
    pub fn element_length(&self, e: usize) -> f64 {
        let el = &self.elements[e];
        dist(self.nodes[el[0]], self.nodes[el[el.len() - 1]])
    }

    /// Checks connectivity ranges, set ranges and element validity.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_nodes();
        let npe = self.kind.nodes_per_element();
        for (e, el) in self.elements.iter().enumerate() {
            if el.len() != npe || el.iter().any(|&i| i >= n) {
                return Err(Error::ElementQuality { element: e, reason: "bad connectivity".into() });
            }
            metric_tensor(self, e)?;
        }
        for (name, s) in &self.node_sets {
            if s.iter().any(|&i| i >= n) {
                return Err(Error::Config(format!("set {name:?} references a missing node")));
            }
        }
        Ok(())
    }
}

pub(crate) fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Dot product of 3-vectors.
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm(sub(a, b))
}
