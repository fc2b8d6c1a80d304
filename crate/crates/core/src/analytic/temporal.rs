//! Time-marching reference for the 1D problem with an oscillating boundary.
//!
//! The SUPG-weighted semi-discrete system `M φ' + K φ = 0` is advanced with
//! Crank-Nicolson, and the last period is projected onto `exp(iωt)`.

use crate::error::{arg, Error, Result};
use crate::mesh::{element_quadrature, uniform_1d, Rule};
use crate::numerics::{ComplexField, Cx, PhysicalParams};
use crate::solver::DenseMatrix;
use std::f64::consts::PI;

/// Nodal history of a time-marching run.
#[derive(Debug, Clone)]
pub struct TemporalTrace {
    pub times: Vec<f64>,
    /// `history[k][node]` at `times[k]`.
    pub history: Vec<Vec<f64>>,
    pub steps_per_cycle: usize,
    pub omega: f64,
}

impl TemporalTrace {
    /// Complex amplitude over the last full cycle, `(2/n) Σ φ(t_k) e^{-iωt_k}`.
    /// At zero frequency this is the cycle mean.
    pub fn fourier_projection(&self) -> ComplexField {
        let s = self.steps_per_cycle;
        let end = self.history.len() - 1;
        let start = end - s;
        let nn = self.history[0].len();
        let mut out = vec![Cx::new(0.0, 0.0); nn];
        let factor = if self.omega == 0.0 { 1.0 / s as f64 } else { 2.0 / s as f64 };
        for k in start..end {
            let ph = Cx::new(0.0, -self.omega * self.times[k]).exp() * factor;
            for (o, v) in out.iter_mut().zip(&self.history[k]) {
                *o += ph * *v;
            }
        }
        ComplexField::from_complex(&out)
    }
}

/// Marches `φ(0,t) = 0`, `φ(L,t) = cos(ωt)` from rest on `n` uniform
/// elements. Without frequency the cycle length is `2 L²/κ`.
pub fn temporal_supg_1d(params: &PhysicalParams, n: usize, steps_per_cycle: usize, n_cycles: usize) -> Result<TemporalTrace> {
    params.validate()?;
    if steps_per_cycle < 50 || n_cycles < 2 {
        return arg("need at least 50 steps per cycle and 2 cycles");
    }
    let mesh = uniform_1d(n, params.length)?;
    let a = params.velocity[0];
    let kappa = params.kappa;
    let omega = params.omega;
    let nn = mesh.n_nodes();
    let mut mass = DenseMatrix::zeros(nn);
    let mut stiff = DenseMatrix::zeros(nn);
    for e in 0..mesh.n_elements() {
        let h = mesh.element_length(e);
        let conv = 2.0 * a.abs() / h;
        let diff = 12.0 * kappa / (h * h);
        let tau = 1.0 / (conv * conv + diff * diff).sqrt();
        let nodes = &mesh.elements[e];
        for q in element_quadrature(&mesh, e, Rule::Standard)? {
            for (i, &ni) in nodes.iter().enumerate() {
                let wi = q.n[i] + tau * a * q.grad[i][0];
                for (j, &nj) in nodes.iter().enumerate() {
                    *mass.at_mut(ni, nj) += wi * q.n[j] * q.weight;
                    let k = wi * a * q.grad[j][0] + kappa * q.grad[i][0] * q.grad[j][0];
                    *stiff.at_mut(ni, nj) += k * q.weight;
                }
            }
        }
    }
    let period = if omega > 0.0 { 2.0 * PI / omega } else { 2.0 * params.length * params.length / kappa };
    let dt = period / steps_per_cycle as f64;
    let mut lhs = DenseMatrix::zeros(nn);
    let mut rhs_m = DenseMatrix::zeros(nn);
    for i in 0..nn {
        for j in 0..nn {
            *lhs.at_mut(i, j) = mass.at(i, j) + 0.5 * dt * stiff.at(i, j);
            *rhs_m.at_mut(i, j) = mass.at(i, j) - 0.5 * dt * stiff.at(i, j);
        }
    }
    for b in [0, nn - 1] {
        for j in 0..nn {
            *lhs.at_mut(b, j) = if j == b { 1.0 } else { 0.0 };
        }
    }
    let lu = lhs.lu()?;
    let total = steps_per_cycle * n_cycles;
    let mut phi = vec![0.0; nn];
    let mut times = Vec::with_capacity(total + 1);
    let mut history = Vec::with_capacity(total + 1);
    times.push(0.0);
    history.push(phi.clone());
    for step in 1..=total {
        let t = step as f64 * dt;
        let mut r = rhs_m.matvec(&phi);
        r[0] = 0.0;
        r[nn - 1] = (omega * t).cos();
        phi = lu.solve(&r);
        if phi.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
            return Err(Error::Divergence(format!("field blew up at step {step}")));
        }
        times.push(t);
        history.push(phi.clone());
    }
    Ok(TemporalTrace { times, history, steps_per_cycle, omega })
}

/// Frequency-domain field recovered from [`temporal_supg_1d`].
pub fn temporal_reference_1d(params: &PhysicalParams, n: usize, steps_per_cycle: usize, n_cycles: usize) -> Result<ComplexField> {
    Ok(temporal_supg_1d(params, n, steps_per_cycle, n_cycles)?.fourier_projection())
}
