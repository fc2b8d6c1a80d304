//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string so the page needs no generated
//! TypeScript types. The plain `*_json` functions carry the logic and are
//! usable (and tested) natively.

use serde::Serialize;
use tsfem::bench::{case_1d, case_2d, l2_error, Case};
use tsfem::fem::{element_params, solve_with, StabilizationMethod, Variant};
use tsfem::mesh::Rule;
use tsfem::numerics::logspace;
use tsfem::solver::GmresOptions;
use wasm_bindgen::prelude::*;

const MAX_1D: usize = 2000;
const MAX_2D: usize = 64;

#[derive(Serialize)]
struct Curve {
    x: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize)]
struct Solve1d {
    method: String,
    nodes: Curve,
    exact: Curve,
    rel_err_sq: f64,
    iterations: usize,
    converged: bool,
}

#[derive(Serialize)]
struct Solve2d {
    method: String,
    n: usize,
    /// Row-major `(n + 1)²` nodal values, `y` outer.
    re: Vec<f64>,
    im: Vec<f64>,
    exact_re: Vec<f64>,
    rel_err_sq: f64,
    iterations: usize,
    converged: bool,
}

#[derive(Serialize)]
struct OmegaHat {
    alpha: Vec<f64>,
    exact_re: Vec<f64>,
    exact_im: Vec<f64>,
    approx_re: Vec<f64>,
    approx_im: Vec<f64>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn solve_case(case: &Case, method: &StabilizationMethod, tol: f64) -> Result<(tsfem::fem::Solution, f64), String> {
    let n_dofs = 2 * case.mesh.n_nodes();
    let opts = GmresOptions { tol, restart: n_dofs.min(400), max_iters: 20 * n_dofs.max(200), ..Default::default() };
    let sol = solve_with(&case.mesh, &case.data, method, &opts, false).map_err(err)?;
    let oracle = case.oracle.clone();
    let (sq, _) = l2_error(&case.mesh, &sol.field, &|x| oracle.eval(x), Rule::Composite { sub: 4, n: 3 }).map_err(err)?;
    Ok((sol, sq))
}

/// Solves the 1D model problem on `n` elements and samples the exact
/// solution finely for plotting.
pub fn solve_1d_json(method: &str, alpha: f64, beta: f64, n: usize) -> Result<String, String> {
    if !(2..=MAX_1D).contains(&n) {
        return Err(format!("element count must be in 2..={MAX_1D}"));
    }
    let variant: Variant = method.parse().map_err(err)?;
    let case = case_1d(alpha, beta, n).map_err(err)?;
    let (sol, sq) = solve_case(&case, &StabilizationMethod::new(variant), 1e-10)?;
    let x: Vec<f64> = case.mesh.nodes.iter().map(|p| p[0]).collect();
    let vals = sol.field.to_complex();
    let fine: Vec<f64> = (0..=800).map(|k| k as f64 / 800.0).collect();
    let exact: Vec<_> = fine.iter().map(|&s| case.oracle.eval([s, 0.0, 0.0])).collect();
    let out = Solve1d {
        method: variant.to_string(),
        nodes: Curve { x, re: vals.iter().map(|v| v.re).collect(), im: vals.iter().map(|v| v.im).collect() },
        exact: Curve { re: exact.iter().map(|v| v.re).collect(), im: exact.iter().map(|v| v.im).collect(), x: fine },
        rel_err_sq: sq,
        iterations: sol.report.iterations,
        converged: sol.report.converged,
    };
    serde_json::to_string(&out).map_err(err)
}

/// Exact and practical ASU modified frequency `ω̂/ω` over `n` element
/// Peclet numbers from 1e-2 to 1e3.
pub fn omega_hat_json(beta: f64, n: usize) -> Result<String, String> {
    if !(2..=1000).contains(&n) {
        return Err("point count must be in 2..=1000".into());
    }
    let alpha = logspace(1e-2, 1e3, n);
    let mut out = OmegaHat {
        alpha: alpha.clone(),
        exact_re: vec![],
        exact_im: vec![],
        approx_re: vec![],
        approx_im: vec![],
    };
    for &a in &alpha {
        let case = case_1d(a, beta, 2).map_err(err)?;
        let omega = case.data.params.omega;
        let ex = element_params(&case.mesh, 0, &case.data, &StabilizationMethod::exact_1d(Variant::Asu)).map_err(err)?;
        let ap = element_params(&case.mesh, 0, &case.data, &StabilizationMethod::new(Variant::Asu)).map_err(err)?;
        let scale = if omega > 0.0 { omega } else { 1.0 };
        out.exact_re.push(ex.omega_hat.re / scale);
        out.exact_im.push(ex.omega_hat.im / scale);
        out.approx_re.push(ap.omega_hat.re / scale);
        out.approx_im.push(ap.omega_hat.im / scale);
    }
    serde_json::to_string(&out).map_err(err)
}

/// Solves the unit-square problem on an `n × n` quad grid.
pub fn solve_2d_json(method: &str, peclet: f64, womersley: f64, n: usize) -> Result<String, String> {
    if !(2..=MAX_2D).contains(&n) {
        return Err(format!("grid size must be in 2..={MAX_2D}"));
    }
    let variant: Variant = method.parse().map_err(err)?;
    let case = case_2d(peclet, womersley, n, 100).map_err(err)?;
    let method = StabilizationMethod::for_kind(variant, case.mesh.kind);
    method.check_admissible(case.mesh.kind).map_err(err)?;
    let (sol, sq) = solve_case(&case, &method, 1e-8)?;
    let exact: Vec<_> = case.mesh.nodes.iter().map(|x| case.oracle.eval(*x)).collect();
    let out = Solve2d {
        method: variant.to_string(),
        n,
        re: sol.field.re.clone(),
        im: sol.field.im.clone(),
        exact_re: exact.iter().map(|v| v.re).collect(),
        rel_err_sq: sq,
        iterations: sol.report.iterations,
        converged: sol.report.converged,
    };
    serde_json::to_string(&out).map_err(err)
}

#[wasm_bindgen]
pub fn solve_1d(method: &str, alpha: f64, beta: f64, n: usize) -> Result<String, JsValue> {
    solve_1d_json(method, alpha, beta, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn omega_hat_curves(beta: f64, n: usize) -> Result<String, JsValue> {
    omega_hat_json(beta, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn solve_2d(method: &str, peclet: f64, womersley: f64, n: usize) -> Result<String, JsValue> {
    solve_2d_json(method, peclet, womersley, n).map_err(|e| JsValue::from_str(&e))
}
