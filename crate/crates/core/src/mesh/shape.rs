use super::{ElementKind, Mesh};
use crate::error::{Error, Result};

/// Quadrature rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Rule used in assembly: 2-point Gauss on lines, 2×2 on quads, 4 points
    /// on tets. Exact for the products of linear shape functions.
    Standard,
    /// Tensor Gauss-Legendre with `n` points per direction. On tets the cube
    /// is collapsed onto the simplex.
    Gauss(usize),
    /// `Gauss(n)` repeated on `sub` equal pieces of each parent direction.
    Composite { sub: usize, n: usize },
}

impl Rule {
    fn per_direction(self) -> Vec<(f64, f64)> {
        let (sub, n) = match self {
            Rule::Standard => (1, 2),
            Rule::Gauss(n) => (1, n),
            Rule::Composite { sub, n } => (sub.max(1), n),
        };
        let g = gauss_legendre(n);
        let w = 2.0 / sub as f64;
        (0..sub)
            .flat_map(|k| {
                let lo = -1.0 + w * k as f64;
                g.iter().map(move |&(x, wt)| (lo + 0.5 * w * (x + 1.0), 0.5 * w * wt))
            })
            .collect()
    }
}

/// One quadrature point mapped to a physical element.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadPoint {
    /// Reference weight times the Jacobian determinant.
    pub weight: f64,
    pub x: [f64; 3],
    /// Shape function values.
    pub n: Vec<f64>,
    /// Physical shape function gradients.
    pub grad: Vec<[f64; 3]>,
}

/// Metric tensor `G = (∂ξ/∂x)ᵀ (∂ξ/∂x)` of an element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    pub g: [[f64; 3]; 3],
    pub dim: usize,
}

impl MetricTensor {
    /// `aᵀ G a`
    pub fn velocity_norm_sq(&self, a: [f64; 3]) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += a[i] * self.g[i][j] * a[j];
            }
        }
        s
    }

    /// `G : G`
    pub fn contract(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.g[i][j] * self.g[i][j];
            }
        }
        s
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev guess refined by Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 0 { 0.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

fn reference_rule(kind: ElementKind, rule: Rule) -> Vec<([f64; 3], f64)> {
    match (kind, rule) {
        (ElementKind::Tet4, Rule::Standard) => {
            let (a, b) = (0.585_410_196_624_968_5, 0.138_196_601_125_010_5);
            [[b, b, b], [a, b, b], [b, a, b], [b, b, a]].into_iter().map(|p| (p, 1.0 / 24.0)).collect()
        }
        (ElementKind::Tet4, r) => {
            // collapse the unit cube onto the unit simplex
            let g: Vec<(f64, f64)> = r.per_direction().into_iter().map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
            let mut out = Vec::with_capacity(g.len().pow(3));
            for &(u, wu) in &g {
                for &(v, wv) in &g {
                    for &(w, ww) in &g {
                        let p = [u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)];
                        out.push((p, wu * wv * ww * (1.0 - u) * (1.0 - u) * (1.0 - v)));
                    }
                }
            }
            out
        }
        (k, r) => {
            let g = r.per_direction();
            if k == ElementKind::Line2 {
                g.into_iter().map(|(x, w)| ([x, 0.0, 0.0], w)).collect()
            } else {
                let mut out = Vec::with_capacity(g.len() * g.len());
                for &(y, wy) in &g {
                    for &(x, wx) in &g {
                        out.push(([x, y, 0.0], wx * wy));
                    }
                }
                out
            }
        }
    }
}

/// Shape function values and parent-coordinate derivatives.
///
/// Lines and quads use `[-1, 1]` parent coordinates, tets the unit simplex.
pub fn shape_functions(kind: ElementKind, xi: [f64; 3]) -> (Vec<f64>, Vec<[f64; 3]>) {
    match kind {
        ElementKind::Line2 => {
            let x = xi[0];
            (vec![0.5 * (1.0 - x), 0.5 * (1.0 + x)], vec![[-0.5, 0.0, 0.0], [0.5, 0.0, 0.0]])
        }
        ElementKind::Quad4 => {
            let (x, y) = (xi[0], xi[1]);
            let sx = [-1.0, 1.0, 1.0, -1.0];
            let sy = [-1.0, -1.0, 1.0, 1.0];
            let n = (0..4).map(|a| 0.25 * (1.0 + sx[a] * x) * (1.0 + sy[a] * y)).collect();
            let d = (0..4)
                .map(|a| [0.25 * sx[a] * (1.0 + sy[a] * y), 0.25 * sy[a] * (1.0 + sx[a] * x), 0.0])
                .collect();
            (n, d)
        }
        ElementKind::Tet4 => {
            let n = vec![1.0 - xi[0] - xi[1] - xi[2], xi[0], xi[1], xi[2]];
            let d = vec![[-1.0, -1.0, -1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
            (n, d)
        }
    }
}

/// Jacobian `∂x/∂ξ`, its determinant and inverse at parent point `xi`.
fn jacobian(kind: ElementKind, coords: &[[f64; 3]], dn: &[[f64; 3]]) -> ([[f64; 3]; 3], f64, [[f64; 3]; 3]) {
    let dim = kind.dim();
    let mut j = [[0.0; 3]; 3];
    for (x, d) in coords.iter().zip(dn) {
        for r in 0..dim {
            for c in 0..dim {
                j[r][c] += x[r] * d[c];
            }
        }
    }
    let (det, inv) = match dim {
        1 => (j[0][0], [[1.0 / j[0][0], 0.0, 0.0], [0.0; 3], [0.0; 3]]),
        2 => {
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            (det, [[j[1][1] / det, -j[0][1] / det, 0.0], [-j[1][0] / det, j[0][0] / det, 0.0], [0.0; 3]])
        }
        _ => {
            let c = |r: usize, s: usize| j[(r + 1) % 3][(s + 1) % 3] * j[(r + 2) % 3][(s + 2) % 3]
                - j[(r + 1) % 3][(s + 2) % 3] * j[(r + 2) % 3][(s + 1) % 3];
            let det = j[0][0] * c(0, 0) + j[0][1] * c(0, 1) + j[0][2] * c(0, 2);
            let mut inv = [[0.0; 3]; 3];
            for r in 0..3 {
                for s in 0..3 {
                    inv[s][r] = c(r, s) / det;
                }
            }
            (det, inv)
        }
    };
    (j, det, inv)
}

fn check_det(e: usize, det: f64, scale: f64) -> Result<()> {
    if !(det.abs() > 1e-14 * scale) || !det.is_finite() {
        return Err(Error::ElementQuality { element: e, reason: format!("Jacobian determinant {det:e}") });
    }
    Ok(())
}

fn length_scale(coords: &[[f64; 3]], dim: usize) -> f64 {
    let mut ext: f64 = 0.0;
    for a in coords {
        for b in coords {
            let d: f64 = (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>().sqrt();
            ext = ext.max(d);
        }
    }
    ext.powi(dim as i32)
}

/// Quadrature points of element `e` with physical gradients.
pub fn element_quadrature(mesh: &Mesh, e: usize, rule: Rule) -> Result<Vec<QuadPoint>> {
    let coords = mesh.element_coords(e);
    let kind = mesh.kind;
    let dim = kind.dim();
    let scale = length_scale(&coords, dim);
    reference_rule(kind, rule)
        .into_iter()
        .map(|(xi, w)| {
            let (n, dn) = shape_functions(kind, xi);
            let (_, det, inv) = jacobian(kind, &coords, &dn);
            check_det(e, det, scale)?;
            let grad = dn
                .iter()
                .map(|d| {
                    let mut g = [0.0; 3];
                    for (k, gk) in g.iter_mut().enumerate().take(dim) {
                        *gk = (0..dim).map(|c| d[c] * inv[c][k]).sum();
                    }
                    g
                })
                .collect();
            let mut x = [0.0; 3];
            for (na, c) in n.iter().zip(&coords) {
                for k in 0..3 {
                    x[k] += na * c[k];
                }
            }
            Ok(QuadPoint { weight: w * det, x, n, grad })
        })
        .collect()
}

/// Metric tensor of element `e` evaluated at its parent centroid.
pub fn metric_tensor(mesh: &Mesh, e: usize) -> Result<MetricTensor> {
    let kind = mesh.kind;
    let coords = mesh.element_coords(e);
    let centroid = match kind {
        ElementKind::Tet4 => [0.25; 3],
        _ => [0.0; 3],
    };
    let (_, dn) = shape_functions(kind, centroid);
    let (_, det, inv) = jacobian(kind, &coords, &dn);
    let dim = kind.dim();
    check_det(e, det, length_scale(&coords, dim))?;
    let mut g = [[0.0; 3]; 3];
    for i in 0..dim {
        for j in 0..dim {
            g[i][j] = (0..dim).map(|k| inv[k][i] * inv[k][j]).sum();
        }
    }
    Ok(MetricTensor { g, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{cylinder_tet_3d, structured_quad_2d, uniform_1d};

    #[test]
    fn gauss_rules_integrate_polynomials() {
        for n in 1..8 {
            let g = gauss_legendre(n);
            for p in 0..2 * n {
                let q: f64 = g.iter().map(|(x, w)| w * x.powi(p as i32)).sum();
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn collapsed_tet_rule_integrates_monomials() {
        // ∫ ξ² η over the unit simplex = 2! 1! / 6! = 1/360
        for rule in [Rule::Gauss(3), Rule::Gauss(5), Rule::Composite { sub: 2, n: 3 }] {
            let s: f64 = reference_rule(ElementKind::Tet4, rule).iter().map(|(p, w)| w * p[0] * p[0] * p[1]).sum();
            assert!((s - 1.0 / 360.0).abs() < 1e-14);
        }
    }

    #[test]
    fn partition_of_unity_and_zero_gradient_sum() {
        let meshes = [uniform_1d(3, 1.0).unwrap(), structured_quad_2d(2, 2, 1.0).unwrap(), cylinder_tet_3d(1.0, 1.0, 1, 2).unwrap()];
        for m in &meshes {
            for e in 0..m.n_elements() {
                for q in element_quadrature(m, e, Rule::Standard).unwrap() {
                    assert!((q.n.iter().sum::<f64>() - 1.0).abs() < 1e-14);
                    for k in 0..3 {
                        assert!(q.grad.iter().map(|g| g[k]).sum::<f64>().abs() < 1e-12);
                    }
                    assert!(q.weight > 0.0);
                }
            }
        }
    }

    #[test]
    fn line_metric_is_four_over_h_squared() {
        let m = uniform_1d(5, 1.0).unwrap();
        let g = metric_tensor(&m, 2).unwrap();
        assert!((g.g[0][0] - 100.0).abs() < 1e-10);
        assert!((g.velocity_norm_sq([2.0, 0.0, 0.0]) - 400.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_element_is_reported() {
        let mut m = uniform_1d(3, 1.0).unwrap();
        m.nodes[1] = m.nodes[0];
        assert!(matches!(metric_tensor(&m, 0), Err(Error::ElementQuality { element: 0, .. })));
    }
}
