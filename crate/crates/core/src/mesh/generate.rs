use super::{cross, dot3, sub, ElementKind, Mesh};
use crate::error::{arg, Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// `n` equal line elements on `[0, length]` with sets `left` and `right`.
pub fn uniform_1d(n: usize, length: f64) -> Result<Mesh> {
    if n < 2 {
        return arg("a 1D mesh needs at least 2 elements");
    }
    if !(length > 0.0) {
        return arg("length must be positive");
    }
    let h = length / n as f64;
    let mut nodes: Vec<[f64; 3]> = (0..=n).map(|i| [i as f64 * h, 0.0, 0.0]).collect();
    nodes[n][0] = length;
    let elements = (0..n).map(|e| vec![e, e + 1]).collect();
    let mut sets = BTreeMap::new();
    sets.insert("left".to_string(), vec![0]);
    sets.insert("right".to_string(), vec![n]);
    Ok(Mesh { kind: ElementKind::Line2, nodes, elements, node_sets: sets })
}

/// `nx × ny` bilinear quadrilaterals on the square `[0, length]²` with sets
/// `bottom`, `right`, `top` and `left`. Nodes are numbered row by row.
pub fn structured_quad_2d(nx: usize, ny: usize, length: f64) -> Result<Mesh> {
    if nx < 1 || ny < 1 {
        return arg("need at least one element per direction");
    }
    if !(length > 0.0) {
        return arg("length must be positive");
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            nodes.push([length * i as f64 / nx as f64, length * j as f64 / ny as f64, 0.0]);
        }
    }
    let mut elements = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            elements.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    let mut sets = BTreeMap::new();
    sets.insert("bottom".into(), (0..=nx).map(|i| id(i, 0)).collect());
    sets.insert("top".into(), (0..=nx).map(|i| id(i, ny)).collect());
    sets.insert("left".into(), (0..=ny).map(|j| id(0, j)).collect());
    sets.insert("right".into(), (0..=ny).map(|j| id(nx, j)).collect());
    Ok(Mesh { kind: ElementKind::Quad4, nodes, elements, node_sets: sets })
}

/// Triangulated disk: a center node plus `n_radial` rings, ring `k` holding
/// `6k` nodes. Returns points and triangles (`6 n_radial²` of them).
fn disk(radius: f64, n_radial: usize) -> (Vec<[f64; 2]>, Vec<[usize; 3]>) {
    let mut pts = vec![[0.0, 0.0]];
    let mut ring_start = vec![0usize];
    for k in 1..=n_radial {
        ring_start.push(pts.len());
        let m = 6 * k;
        let r = radius * k as f64 / n_radial as f64;
        for j in 0..m {
            let t = 2.0 * PI * j as f64 / m as f64;
            pts.push([r * t.cos(), r * t.sin()]);
        }
    }
    let mut tris = Vec::new();
    for k in 1..=n_radial {
        let outer = |j: usize| ring_start[k] + j % (6 * k);
        let m2 = 6 * k;
        if k == 1 {
            for j in 0..m2 {
                tris.push([0, outer(j), outer(j + 1)]);
            }
            continue;
        }
        let m1 = 6 * (k - 1);
        let inner = |i: usize| ring_start[k - 1] + i % m1;
        let (mut i, mut j) = (0, 0);
        // advance along whichever ring has the next node at the smaller angle
        while i < m1 || j < m2 {
            let ti = (i + 1) as f64 / m1 as f64;
            let tj = (j + 1) as f64 / m2 as f64;
            if j >= m2 || (i < m1 && ti < tj) {
                tris.push([inner(i), inner(i + 1), outer(j)]);
                i += 1;
            } else {
                tris.push([inner(i), outer(j + 1), outer(j)]);
                j += 1;
            }
        }
    }
    (pts, tris)
}

/// Tetrahedral mesh of a cylinder of given radius and length along `z`.
///
/// The disk is extruded into `n_axial` prism layers and each prism is split
/// into 3 tetrahedra using the global node order, which keeps the diagonals
/// of shared quadrilateral faces consistent. Sets are `inlet` (z = 0),
/// `outlet` (z = length) and `wall`.
pub fn cylinder_tet_3d(radius: f64, length: f64, n_axial: usize, n_radial: usize) -> Result<Mesh> {
    if !(radius > 0.0) || !(length > 0.0) {
        return arg("radius and length must be positive");
    }
    if n_axial < 1 || n_radial < 1 {
        return arg("need at least one axial layer and one radial ring");
    }
    let (pts, tris) = disk(radius, n_radial);
    let nd = pts.len();
    let mut nodes = Vec::with_capacity(nd * (n_axial + 1));
    for l in 0..=n_axial {
        let z = length * l as f64 / n_axial as f64;
        for p in &pts {
            nodes.push([p[0], p[1], z]);
        }
    }
    let mut elements = Vec::with_capacity(3 * tris.len() * n_axial);
    for l in 0..n_axial {
        for t in &tris {
            let mut v = *t;
            v.sort_unstable();
            let b = |i: usize| l * nd + v[i];
            let top = |i: usize| (l + 1) * nd + v[i];
            for tet in [[b(0), b(1), b(2), top(2)], [b(0), b(1), top(1), top(2)], [b(0), top(0), top(1), top(2)]] {
                let vol = signed_volume(&nodes, &tet);
                if vol.abs() < 1e-14 * radius * radius * length {
                    return Err(Error::MeshGeneration("zero-volume tetrahedron".into()));
                }
                let mut tet = tet;
                if vol < 0.0 {
                    tet.swap(2, 3);
                }
                elements.push(tet.to_vec());
            }
        }
    }
    let rim: Vec<usize> = (nd - 6 * n_radial..nd).collect();
    let mut sets = BTreeMap::new();
    sets.insert("inlet".into(), (0..nd).collect());
    sets.insert("outlet".into(), (n_axial * nd..(n_axial + 1) * nd).collect());
    sets.insert(
        "wall".into(),
        (0..=n_axial).flat_map(|l| rim.iter().map(move |r| l * nd + r)).collect(),
    );
    Ok(Mesh { kind: ElementKind::Tet4, nodes, elements, node_sets: sets })
}

fn signed_volume(nodes: &[[f64; 3]], t: &[usize; 4]) -> f64 {
    let p0 = nodes[t[0]];
    dot3(sub(nodes[t[1]], p0), cross(sub(nodes[t[2]], p0), sub(nodes[t[3]], p0))) / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_mesh() {
        let m = uniform_1d(4, 2.0).unwrap();
        assert_eq!(m.n_nodes(), 5);
        assert_eq!(m.nodes[4][0], 2.0);
        assert!(uniform_1d(1, 1.0).is_err());
    }

    #[test]
    fn quad_mesh_sets_share_corners() {
        let m = structured_quad_2d(3, 2, 1.0).unwrap();
        assert_eq!(m.n_elements(), 6);
        assert_eq!(m.node_set("bottom").unwrap(), &[0, 1, 2, 3]);
        assert_eq!(m.node_set("left").unwrap(), &[0, 4, 8]);
        let total: f64 = (0..6).map(|e| m.element_measure(e).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn disk_triangle_count() {
        for n in 1..6 {
            let (p, t) = disk(1.0, n);
            assert_eq!(t.len(), 6 * n * n);
            assert_eq!(p.len(), 1 + 3 * n * (n + 1));
        }
    }

    #[test]
    fn cylinder_volume_matches_polygon() {
        let (r, l, nr) = (0.1, 1.0, 4);
        let m = cylinder_tet_3d(r, l, 6, nr).unwrap();
        assert_eq!(m.n_elements(), 18 * nr * nr * 6);
        let vol: f64 = (0..m.n_elements()).map(|e| m.element_measure(e).unwrap()).sum();
        let sides = 6.0 * nr as f64;
        let poly = 0.5 * sides * r * r * (2.0 * PI / sides).sin() * l;
        assert!((vol - poly).abs() < 1e-12 * poly);
        assert!((vol - PI * r * r * l).abs() < 0.02 * PI * r * r * l);
        assert!((0..m.n_elements()).all(|e| m.element_measure(e).unwrap() > 0.0));
    }

    #[test]
    fn cylinder_faces_are_conforming() {
        // every interior face is shared by exactly two tets
        let m = cylinder_tet_3d(1.0, 2.0, 3, 3).unwrap();
        let mut count = std::collections::HashMap::new();
        for el in &m.elements {
            for f in ElementKind::Tet4.faces() {
                let mut k: Vec<usize> = f.iter().map(|&i| el[i]).collect();
                k.sort_unstable();
                *count.entry(k).or_insert(0) += 1;
            }
        }
        assert!(count.values().all(|&c| c == 1 || c == 2));
        let boundary = count.values().filter(|&&c| c == 1).count();
        let inlet = m.boundary_faces("inlet").unwrap().len();
        let outlet = m.boundary_faces("outlet").unwrap().len();
        let wall = m.boundary_faces("wall").unwrap().len();
        assert_eq!(inlet, 54);
        assert_eq!(outlet, 54);
        assert_eq!(inlet + outlet + wall, boundary);
    }

    #[test]
    fn default_cylinder_size() {
        let m = cylinder_tet_3d(0.1, 1.0, 30, 4).unwrap();
        assert_eq!(m.n_elements(), 8640);
    }
}
