use super::method::{OmegaHatMode, ProblemData, StabilizationMethod, TauMode, Variant};
use crate::analytic::{kappa_asu, omega_hat_approx, omega_hat_exact, tau_approx, tau_exact_from_kappa, tau_max};
use crate::error::Result;
use crate::mesh::{dot3, element_quadrature, metric_tensor, Mesh, Rule};
use crate::numerics::{Cx, I};

/// Per-element coefficients shared by the matrix and energy routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementParams {
    pub velocity: [f64; 3],
    pub kappa: f64,
    pub omega: f64,
    pub tau: f64,
    pub tau_diff: f64,
    /// ASU modified frequency, equal to `ω` for other methods.
    pub omega_hat: Cx,
    /// ASU added diffusivity, zero for other methods.
    pub kappa_asu: Cx,
}

/// Computes the intrinsic time scales and ASU coefficients of element `e`.
pub fn element_params(mesh: &Mesh, e: usize, data: &ProblemData, method: &StabilizationMethod) -> Result<ElementParams> {
    let a = data.velocity(e);
    let kappa = data.params.kappa;
    let omega = data.params.omega;
    let g = metric_tensor(mesh, e)?;
    let conv_inv = g.velocity_norm_sq(a).sqrt();
    let diff_inv = 3.0 * kappa * g.contract().sqrt();
    let tau_diff = 1.0 / diff_inv;
    let tau = match method.tau_mode {
        TauMode::Approximate => tau_approx(conv_inv, diff_inv)?,
        TauMode::Exact1d => tau_exact_from_kappa(mesh.element_length(e), a[0], kappa)?,
    };
    let (omega_hat, k_asu) = if method.variant == Variant::Asu {
        let w = match method.omega_hat_mode {
            OmegaHatMode::Approximate => {
                let cap = if method.limiter { tau_max(omega, tau_diff)? } else { None };
                omega_hat_approx(omega, tau, cap)
            }
            OmegaHatMode::Exact1d => {
                let h = mesh.element_length(e);
                omega_hat_exact(a[0] * h / (2.0 * kappa), omega * h * h / (6.0 * kappa), omega)?
            }
        };
        (w, kappa_asu(w, tau_diff, kappa))
    } else {
        (Cx::new(omega, 0.0), Cx::new(0.0, 0.0))
    };
    Ok(ElementParams { velocity: a, kappa, omega, tau, tau_diff, omega_hat, kappa_asu: k_asu })
}

/// Complex element matrix and load vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementSystem {
    /// Global node numbers of the element.
    pub nodes: Vec<usize>,
    /// `k[a][b]`: test function `a`, trial function `b`.
    pub k: Vec<Vec<Cx>>,
    pub f: Vec<Cx>,
}

impl ElementSystem {
    /// Real `2n × 2n` block with rows and columns ordered `[re, im]` per node.
    pub fn to_real_block(&self) -> Vec<Vec<f64>> {
        let n = self.nodes.len();
        let mut out = vec![vec![0.0; 2 * n]; 2 * n];
        for a in 0..n {
            for b in 0..n {
                let k = self.k[a][b];
                out[2 * a][2 * b] = k.re;
                out[2 * a][2 * b + 1] = -k.im;
                out[2 * a + 1][2 * b] = k.im;
                out[2 * a + 1][2 * b + 1] = k.re;
            }
        }
        out
    }
}

/// Element matrix and load of element `e` for the chosen method.
///
/// Gradient-reconstruction variants return their SUPG or VMS/GLS base part;
/// the nonlocal coupling is added during assembly.
pub fn element_matrix(mesh: &Mesh, e: usize, data: &ProblemData, method: &StabilizationMethod) -> Result<ElementSystem> {
    let p = element_params(mesh, e, data, method)?;
    let nodes = mesh.elements[e].clone();
    let n = nodes.len();
    let mut k = vec![vec![Cx::new(0.0, 0.0); n]; n];
    let mut f = vec![Cx::new(0.0, 0.0); n];
    let iw = I * p.omega;
    let (supg, vms) = match method.variant {
        Variant::Galerkin | Variant::Asu => (false, false),
        Variant::Supg | Variant::RdSupg => (true, false),
        Variant::VmsGls | Variant::RdVms => (true, true),
    };
    let asu = method.variant == Variant::Asu;
    for q in element_quadrature(mesh, e, Rule::Standard)? {
        let adv: Vec<f64> = q.grad.iter().map(|g| dot3(p.velocity, *g)).collect();
        let src = data
            .source
            .as_ref()
            .map(|s| nodes.iter().zip(&q.n).map(|(&nd, na)| s.get(nd) * *na).sum::<Cx>())
            .unwrap_or_default();
        for a in 0..n {
            for b in 0..n {
                let mass = q.n[a] * q.n[b];
                let lap = dot3(q.grad[a], q.grad[b]);
                let mut v = if asu {
                    I * p.omega_hat * mass + q.n[a] * adv[b] + (p.kappa + p.kappa_asu) * lap + p.tau * adv[a] * adv[b]
                } else {
                    iw * mass + q.n[a] * adv[b] + p.kappa * lap
                };
                // strong residual of linear elements has no second derivative
                let residual = iw * q.n[b] + adv[b];
                if supg {
                    v += p.tau * adv[a] * residual;
                }
                if vms {
                    v -= iw * p.tau * q.n[a] * residual;
                }
                k[a][b] += v * q.weight;
            }
            let mut load = q.n[a] * src;
            if supg {
                load += p.tau * adv[a] * src;
            }
            if vms {
                load -= iw * p.tau * q.n[a] * src;
            }
            f[a] += load * q.weight;
        }
    }
    Ok(ElementSystem { nodes, k, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::uniform_1d;
    use crate::numerics::PhysicalParams;

    #[test]
    fn galerkin_1d_element_by_hand() {
        let m = uniform_1d(4, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new_1d(3.0, 2.0, 0.5, 1.0));
        let es = element_matrix(&m, 1, &data, &StabilizationMethod::new(Variant::Galerkin)).unwrap();
        let h = 0.25;
        let expect = [
            [I * 3.0 * h / 3.0 - 1.0 + 0.5 / h, I * 3.0 * h / 6.0 + 1.0 - 0.5 / h],
            [I * 3.0 * h / 6.0 - 1.0 - 0.5 / h, I * 3.0 * h / 3.0 + 1.0 + 0.5 / h],
        ];
        for a in 0..2 {
            for b in 0..2 {
                assert!((es.k[a][b] - expect[a][b]).norm() < 1e-13, "{a}{b}");
            }
        }
        let blk = es.to_real_block();
        assert_eq!(blk[0][1], -es.k[0][0].im);
        assert_eq!(blk[3][2], es.k[1][1].im);
    }

    #[test]
    fn tau_matches_one_dimensional_scales() {
        let m = uniform_1d(10, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new_1d(1.0, 3.0, 0.2, 1.0));
        let p = element_params(&m, 0, &data, &StabilizationMethod::new(Variant::Supg)).unwrap();
        let h: f64 = 0.1;
        let expect = 1.0 / ((2.0 * 3.0 / h).powi(2) + (12.0 * 0.2 / (h * h)).powi(2)).sqrt();
        assert!((p.tau - expect).abs() < 1e-14 * expect);
        assert!((p.tau_diff - h * h / (12.0 * 0.2)).abs() < 1e-15);
    }
}
