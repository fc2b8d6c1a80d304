use super::element::element_params;
use super::method::{ProblemData, StabilizationMethod, Variant};
use crate::error::{Error, Result};
use crate::mesh::{dot3, element_quadrature, Mesh, Rule};
use crate::numerics::ComplexField;

/// Closed-form stability energy `B(w, w)` of a real-split field `w`.
///
/// The advective Galerkin terms are dropped since they integrate to zero for
/// fields vanishing on Dirichlet boundaries with divergence-free velocity
/// tangent to the remaining boundary. The SUPG cross term is kept in its
/// element-wise form `τ ω (w_r a·∇w_i - w_i a·∇w_r)`.
pub fn analytic_energy(mesh: &Mesh, data: &ProblemData, method: &StabilizationMethod, w: &ComplexField) -> Result<f64> {
    if w.len() != mesh.n_nodes() {
        return Err(Error::Config("field length does not match the mesh".into()));
    }
    if method.variant.is_rd() {
        return Err(Error::Config("no closed-form energy for gradient reconstruction".into()));
    }
    let mut total = 0.0;
    for e in 0..mesh.n_elements() {
        let p = element_params(mesh, e, data, method)?;
        let nodes = &mesh.elements[e];
        for q in element_quadrature(mesh, e, Rule::Standard)? {
            let (mut wr, mut wi) = (0.0, 0.0);
            let (mut gr, mut gi) = ([0.0; 3], [0.0; 3]);
            for (a, &n) in nodes.iter().enumerate() {
                wr += q.n[a] * w.re[n];
                wi += q.n[a] * w.im[n];
                for k in 0..3 {
                    gr[k] += q.grad[a][k] * w.re[n];
                    gi[k] += q.grad[a][k] * w.im[n];
                }
            }
            let grad2 = dot3(gr, gr) + dot3(gi, gi);
            let (ar, ai) = (dot3(p.velocity, gr), dot3(p.velocity, gi));
            let wsq = wr * wr + wi * wi;
            let val = match method.variant {
                Variant::Galerkin => p.kappa * grad2,
                Variant::Supg => {
                    p.kappa * grad2 + p.tau * (ar * ar + ai * ai) + p.tau * p.omega * (wr * ai - wi * ar)
                }
                Variant::VmsGls => {
                    let (s1, s2) = (p.omega * wi - ar, p.omega * wr + ai);
                    p.kappa * grad2 + p.tau * (s1 * s1 + s2 * s2)
                }
                Variant::Asu => {
                    -p.omega_hat.im * wsq + (p.kappa + p.kappa_asu.re) * grad2 + p.tau * (ar * ar + ai * ai)
                }
                Variant::RdSupg | Variant::RdVms => unreachable!(),
            };
            total += val * q.weight;
        }
    }
    Ok(total)
}
