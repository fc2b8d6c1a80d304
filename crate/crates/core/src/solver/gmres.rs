//! Restarted GMRES with right preconditioning, so the monitored residual is
//! the true residual `‖b - A x‖`.

use super::SparseMatrix;
use crate::error::{arg, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preconditioner {
    None,
    /// Diagonal scaling.
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmresOptions {
    /// Relative residual target `‖b - A x‖ / ‖b‖`.
    pub tol: f64,
    /// Krylov dimension before restart.
    pub restart: usize,
    /// Cap on total inner iterations.
    pub max_iters: usize,
    pub preconditioner: Preconditioner,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self { tol: 1e-4, restart: 200, max_iters: 1000, preconditioner: Preconditioner::Jacobi }
    }
}

impl GmresOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Outcome of a linear solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub iterations: usize,
    /// Final relative residual.
    pub residual: f64,
    pub converged: bool,
    /// Relative residual estimate after every inner iteration.
    pub history: Vec<f64>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `A x = b` from a zero initial guess.
///
/// Non-convergence within `max_iters` is reported in [`SolveReport`], not as
/// an error.
pub fn gmres(a: &SparseMatrix, b: &[f64], opts: &GmresOptions) -> Result<(Vec<f64>, SolveReport)> {
    let n = a.n();
    if b.len() != n {
        return arg("right-hand side length does not match the matrix");
    }
    if opts.restart == 0 || !(opts.tol > 0.0) {
        return arg("restart must be positive and tolerance positive");
    }
    let minv: Vec<f64> = match opts.preconditioner {
        Preconditioner::None => vec![1.0; n],
        Preconditioner::Jacobi => a
            .diagonal()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if d == 0.0 || !d.is_finite() {
                    Err(Error::Preconditioner(format!("zero diagonal in row {i}")))
                } else {
                    Ok(1.0 / d)
                }
            })
            .collect::<Result<_>>()?,
    };
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    if bnorm == 0.0 {
        return Ok((x, SolveReport { iterations: 0, residual: 0.0, converged: true, history: vec![] }));
    }

    let m = opts.restart.min(n.max(1));
    let mut history = Vec::new();
    let mut iters = 0;
    let mut r = b.to_vec();
    let mut rel = 1.0;
    let mut tmp = vec![0.0; n];
    let mut ax = vec![0.0; n];

    while iters < opts.max_iters {
        let beta = norm(&r);
        rel = beta / bnorm;
        if rel <= opts.tol {
            break;
        }
        let mut v: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        v.push(r.iter().map(|x| x / beta).collect());
        let mut h = vec![vec![0.0; m]; m + 1];
        let (mut cs, mut sn) = (vec![0.0; m], vec![0.0; m]);
        let mut g = vec![0.0; m + 1];
        g[0] = beta;
        let mut k_used = 0;
        for k in 0..m {
            if iters >= opts.max_iters {
                break;
            }
            for i in 0..n {
                tmp[i] = minv[i] * v[k][i];
            }
            let mut w = vec![0.0; n];
            a.matvec(&tmp, &mut w);
            for (j, vj) in v.iter().enumerate() {
                let hj = dot(&w, vj);
                h[j][k] = hj;
                for (wi, vi) in w.iter_mut().zip(vj) {
                    *wi -= hj * vi;
                }
            }
            // second Gram-Schmidt pass for orthogonality
            for (j, vj) in v.iter().enumerate() {
                let c = dot(&w, vj);
                h[j][k] += c;
                for (wi, vi) in w.iter_mut().zip(vj) {
                    *wi -= c * vi;
                }
            }
            let hn = norm(&w);
            h[k + 1][k] = hn;
            for j in 0..k {
                let t = cs[j] * h[j][k] + sn[j] * h[j + 1][k];
                h[j + 1][k] = -sn[j] * h[j][k] + cs[j] * h[j + 1][k];
                h[j][k] = t;
            }
            let den = (h[k][k] * h[k][k] + h[k + 1][k] * h[k + 1][k]).sqrt();
            if den == 0.0 {
                break;
            }
            cs[k] = h[k][k] / den;
            sn[k] = h[k + 1][k] / den;
            h[k][k] = den;
            h[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            iters += 1;
            k_used = k + 1;
            rel = g[k + 1].abs() / bnorm;
            history.push(rel);
            if rel <= opts.tol || hn <= 1e-14 * beta {
                break;
            }
            v.push(w.iter().map(|x| x / hn).collect());
        }
        if k_used == 0 {
            break;
        }
        let mut y = vec![0.0; k_used];
        for i in (0..k_used).rev() {
            let s: f64 = (i + 1..k_used).map(|j| h[i][j] * y[j]).sum();
            y[i] = (g[i] - s) / h[i][i];
        }
        let mut z = vec![0.0; n];
        for (j, yj) in y.iter().enumerate() {
            for (zi, vi) in z.iter_mut().zip(&v[j]) {
                *zi += yj * vi;
            }
        }
        for i in 0..n {
            x[i] += minv[i] * z[i];
        }
        a.matvec(&x, &mut ax);
        for i in 0..n {
            r[i] = b[i] - ax[i];
        }
        rel = norm(&r) / bnorm;
        if rel <= opts.tol {
            break;
        }
    }
    let converged = rel <= opts.tol && rel.is_finite();
    Ok((x, SolveReport { iterations: iters, residual: rel, converged, history }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag(n: usize, lo: f64, d: f64, up: f64) -> SparseMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, d));
            if i > 0 {
                t.push((i, i - 1, lo));
            }
            if i + 1 < n {
                t.push((i, i + 1, up));
            }
        }
        SparseMatrix::from_triplets(n, &t).unwrap()
    }

    #[test]
    fn identity_in_one_iteration() {
        let a = tridiag(10, 0.0, 1.0, 0.0);
        let b: Vec<f64> = (0..10).map(|i| i as f64 + 1.0).collect();
        let (x, rep) = gmres(&a, &b, &GmresOptions::with_tol(1e-12)).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.converged);
        assert!(x.iter().zip(&b).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn nonsymmetric_with_restarts() {
        let a = tridiag(200, -1.3, 2.5, -0.7);
        let b = vec![1.0; 200];
        let opts = GmresOptions { tol: 1e-10, restart: 15, max_iters: 2000, preconditioner: Preconditioner::Jacobi };
        let (x, rep) = gmres(&a, &b, &opts).unwrap();
        assert!(rep.converged);
        let mut ax = vec![0.0; 200];
        a.matvec(&x, &mut ax);
        let res: f64 = ax.iter().zip(&b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        assert!(res / (200f64).sqrt() <= 1e-10 * 1.0001);
        assert_eq!(rep.history.len(), rep.iterations);
    }

    #[test]
    fn reports_non_convergence() {
        let a = tridiag(100, -1.0, 2.0, -1.0);
        let opts = GmresOptions { tol: 1e-14, restart: 3, max_iters: 10, preconditioner: Preconditioner::None };
        let (_, rep) = gmres(&a, &vec![1.0; 100], &opts).unwrap();
        assert!(!rep.converged);
        assert_eq!(rep.iterations, 10);
    }

    #[test]
    fn zero_rhs_and_bad_diagonal() {
        let a = tridiag(4, 1.0, 2.0, 1.0);
        let (x, rep) = gmres(&a, &[0.0; 4], &GmresOptions::default()).unwrap();
        assert!(rep.converged && x.iter().all(|v| *v == 0.0));
        let z = tridiag(4, 1.0, 0.0, 1.0);
        assert!(matches!(gmres(&z, &[1.0; 4], &GmresOptions::default()), Err(Error::Preconditioner(_))));
    }
}
