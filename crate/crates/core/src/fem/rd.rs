//! Gradient reconstruction for 1D linear elements.
//!
//! The nodal gradient field is the consistent-mass L2 projection of the
//! element-wise constant derivative, `ψ = M⁻¹ D φ`, taken over all nodes
//! without boundary conditions.

use crate::error::{Error, Result};
use crate::mesh::{element_quadrature, ElementKind, Mesh, Rule};
use crate::numerics::ComplexField;
use crate::solver::DenseMatrix;

/// Dense matrix `R = M⁻¹ D` mapping nodal values to projected gradients.
pub fn rd_operator(mesh: &Mesh) -> Result<DenseMatrix> {
    if mesh.kind != ElementKind::Line2 {
        return Err(Error::Config("gradient reconstruction is only available on 1D meshes".into()));
    }
    let n = mesh.n_nodes();
    let mut mass = DenseMatrix::zeros(n);
    let mut d = DenseMatrix::zeros(n);
    for e in 0..mesh.n_elements() {
        let nodes = &mesh.elements[e];
        for q in element_quadrature(mesh, e, Rule::Standard)? {
            for (a, &na) in nodes.iter().enumerate() {
                for (b, &nb) in nodes.iter().enumerate() {
                    *mass.at_mut(na, nb) += q.n[a] * q.n[b] * q.weight;
                    *d.at_mut(na, nb) += q.n[a] * q.grad[b][0] * q.weight;
                }
            }
        }
    }
    let lu = mass.lu()?;
    let mut r = DenseMatrix::zeros(n);
    let mut col = vec![0.0; n];
    for b in 0..n {
        for (i, c) in col.iter_mut().enumerate() {
            *c = d.at(i, b);
        }
        let x = lu.solve(&col);
        for i in 0..n {
            *r.at_mut(i, b) = x[i];
        }
    }
    Ok(r)
}

/// Projected nodal gradient of a 1D field.
pub fn rd_reconstruct(mesh: &Mesh, field: &ComplexField) -> Result<ComplexField> {
    if field.len() != mesh.n_nodes() {
        return Err(Error::Config("field length does not match the mesh".into()));
    }
    let r = rd_operator(mesh)?;
    Ok(ComplexField { re: r.matvec(&field.re), im: r.matvec(&field.im) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::uniform_1d;

    #[test]
    fn linear_field_has_constant_gradient() {
        let m = uniform_1d(8, 2.0).unwrap();
        let f = ComplexField { re: m.nodes.iter().map(|p| 3.0 * p[0]).collect(), im: vec![1.0; 9] };
        let g = rd_reconstruct(&m, &f).unwrap();
        assert!(g.re.iter().all(|v| (v - 3.0).abs() < 1e-12));
        assert!(g.im.iter().all(|v| v.abs() < 1e-12));
    }
}
