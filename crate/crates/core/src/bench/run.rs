use super::cases::{case_1d, case_2d, case_3d, Case, FlowDirection};
use super::config::{ExperimentConfig, ExperimentKind, ReferenceNorm};
use super::error::{l2_error_sampled, sample_interpolant, sample_oracle};
use crate::error::{Error, Result};
use crate::fem::{element_params, solve_with, StabilizationMethod, Variant};
use crate::mesh::{uniform_1d, ElementKind, Rule};
use crate::numerics::ComplexField;
use crate::solver::GmresOptions;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

const SERIES_TERMS: usize = 200;

/// One cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub experiment: String,
    pub method: String,
    #[serde(rename = "alpha_or_P")]
    pub alpha_or_p: f64,
    #[serde(rename = "beta_or_W")]
    pub beta_or_w: f64,
    pub rel_err_sq: f64,
    pub rel_err: f64,
    pub iters: usize,
    pub converged: bool,
    pub wall_ms: f64,
}

/// Aggregate over all cells sharing a method and second parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub method: String,
    pub beta_or_w: f64,
    pub cells: usize,
    pub diverged: usize,
    /// Mean over converged cells only.
    pub mean_iters: Option<f64>,
    pub mean_rel_err_sq: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub method: String,
    pub peclet: f64,
    pub womersley: f64,
    pub n_radial: usize,
    pub l_over_h: f64,
    pub n_elements: usize,
    pub rel_err: f64,
    pub iters: usize,
    pub converged: bool,
}

/// Least-squares slope of `log(rel_err)` against `log(L/h)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub method: String,
    pub peclet: f64,
    pub womersley: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaHatRow {
    pub alpha: f64,
    pub beta: f64,
    pub exact_re: f64,
    pub exact_im: f64,
    pub approx_re: f64,
    pub approx_im: f64,
}

/// Nodal value of a 2D solution next to the reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldRow {
    pub method: String,
    pub peclet: f64,
    pub womersley: f64,
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
    pub exact_re: f64,
    pub exact_im: f64,
}

/// Everything produced by [`run_experiment`]. The JSON summary holds the
/// config echo, the rows, the group means and any fitted slopes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorReport {
    pub config: ExperimentConfig,
    pub rows: Vec<ErrorRow>,
    pub summary: Vec<GroupSummary>,
    pub slopes: Vec<SlopeFit>,
    #[serde(skip)]
    pub convergence: Vec<ConvergenceRow>,
    #[serde(skip)]
    pub omega_hat: Vec<OmegaHatRow>,
    #[serde(skip)]
    pub fields: Vec<FieldRow>,
}

impl ErrorReport {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    /// Rows of one method in grid order.
    pub fn method_rows(&self, method: Variant) -> Vec<&ErrorRow> {
        let name = method.to_string();
        self.rows.iter().filter(|r| r.method == name).collect()
    }

    pub fn summary_for(&self, method: Variant, beta_or_w: f64) -> Option<&GroupSummary> {
        let name = method.to_string();
        self.summary.iter().find(|s| s.method == name && s.beta_or_w == beta_or_w)
    }

    pub fn slope_for(&self, method: Variant, peclet: f64, womersley: f64) -> Option<f64> {
        let name = method.to_string();
        self.slopes.iter().find(|s| s.method == name && s.peclet == peclet && s.womersley == womersley).map(|s| s.slope)
    }

    pub fn rows_csv(&self) -> Result<String> {
        to_csv(&self.rows)
    }

    /// Writes `<experiment>.csv`, `<experiment>.json` and any side tables
    /// into `dir`, returning the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let stem = self.config.experiment.to_string();
        let mut out = vec![];
        let mut put = |name: String, text: String| -> Result<()> {
            let p = dir.join(name);
            std::fs::write(&p, text)?;
            out.push(p);
            Ok(())
        };
        put(format!("{stem}.csv"), self.rows_csv()?)?;
        put(format!("{stem}.json"), serde_json::to_string_pretty(self)?)?;
        if !self.convergence.is_empty() {
            put(format!("{stem}_levels.csv"), to_csv(&self.convergence)?)?;
        }
        if !self.omega_hat.is_empty() {
            put(format!("{stem}_curves.csv"), to_csv(&self.omega_hat)?)?;
        }
        if !self.fields.is_empty() {
            put(format!("{stem}_fields.csv"), to_csv(&self.fields)?)?;
        }
        Ok(out)
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 || x.iter().chain(y).any(|v| !(*v > 0.0)) {
        return Err(Error::Argument("slope fit needs at least two positive pairs".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Argument("slope fit needs distinct abscissae".into()));
    }
    Ok(lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>() / sxx)
}

fn par_map<T, R, F>(items: &[T], parallel: bool, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

struct Cell {
    row: ErrorRow,
    field: Option<ComplexField>,
}

/// Solves one case with every method, sharing the reference samples.
fn solve_case(cfg: &ExperimentConfig, case: &Case, opts: &GmresOptions, rule: Rule, key: (f64, f64)) -> Result<Vec<Cell>> {
    let oracle = case.oracle.clone();
    let samples = match cfg.norm {
        ReferenceNorm::Pointwise => sample_oracle(&case.mesh, &|x| oracle.eval(x), rule)?,
        ReferenceNorm::Nodal => sample_interpolant(&case.mesh, &|x| oracle.eval(x), rule)?,
    };
    let mut cells = Vec::with_capacity(cfg.methods.len());
    for &v in &cfg.methods {
        let method = cfg.method(v, case.mesh.kind);
        let start = (!cfg.deterministic).then(Instant::now);
        let mut row = ErrorRow {
            experiment: cfg.experiment.to_string(),
            method: v.to_string(),
            alpha_or_p: key.0,
            beta_or_w: key.1,
            rel_err_sq: f64::NAN,
            rel_err: f64::NAN,
            iters: 0,
            converged: false,
            wall_ms: 0.0,
        };
        let field = match solve_with(&case.mesh, &case.data, &method, opts, !cfg.deterministic) {
            Ok(sol) => {
                let (sq, r) = l2_error_sampled(&case.mesh, &sol.field, &samples)?;
                row.rel_err_sq = sq;
                row.rel_err = r;
                row.iters = sol.report.iterations;
                row.converged = sol.report.converged && sq.is_finite();
                Some(sol.field)
            }
            // breakdowns are recorded per cell
            Err(Error::Singular(_) | Error::Preconditioner(_) | Error::Divergence(_)) => None,
            Err(e) => return Err(e),
        };
        if let Some(start) = start {
            row.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        }
        cells.push(Cell { row, field });
    }
    Ok(cells)
}

/// Flattens per-point results into method-major grid order.
fn method_major<T>(per_point: Vec<Vec<T>>, n_methods: usize) -> Vec<T> {
    let mut columns: Vec<Vec<T>> = (0..n_methods).map(|_| Vec::with_capacity(per_point.len())).collect();
    for point in per_point {
        for (m, c) in point.into_iter().enumerate() {
            columns[m].push(c);
        }
    }
    columns.into_iter().flatten().collect()
}

fn summarize(rows: &[ErrorRow]) -> Vec<GroupSummary> {
    let mut out: Vec<GroupSummary> = vec![];
    let mut sums: Vec<(f64, f64)> = vec![];
    for r in rows {
        let i = match out.iter().position(|g| g.method == r.method && g.beta_or_w == r.beta_or_w) {
            Some(i) => i,
            None => {
                out.push(GroupSummary {
                    method: r.method.clone(),
                    beta_or_w: r.beta_or_w,
                    cells: 0,
                    diverged: 0,
                    mean_iters: None,
                    mean_rel_err_sq: None,
                });
                sums.push((0.0, 0.0));
                out.len() - 1
            }
        };
        out[i].cells += 1;
        if r.converged {
            sums[i].0 += r.iters as f64;
            sums[i].1 += r.rel_err_sq;
        } else {
            out[i].diverged += 1;
        }
    }
    for (g, (it, err)) in out.iter_mut().zip(sums) {
        let ok = (g.cells - g.diverged) as f64;
        if ok > 0.0 {
            g.mean_iters = Some(it / ok);
            g.mean_rel_err_sq = Some(err / ok);
        }
    }
    out
}

fn grid_points(cfg: &ExperimentConfig) -> Vec<(f64, f64)> {
    cfg.second.iter().flat_map(|&b| cfg.grid.iter().map(move |&a| (a, b))).collect()
}

fn omega_hat_rows(cfg: &ExperimentConfig) -> Result<(Vec<ErrorRow>, Vec<OmegaHatRow>)> {
    let mesh = uniform_1d(2, 1.0)?;
    let approx = ExperimentConfig { exact_1d: false, ..cfg.clone() }.method(Variant::Asu, ElementKind::Line2);
    let exact = StabilizationMethod::exact_1d(Variant::Asu);
    let mut rows = vec![];
    let mut curves = vec![];
    for (alpha, beta) in grid_points(cfg) {
        let data = case_1d(alpha, beta, 2)?.data;
        let we = element_params(&mesh, 0, &data, &exact)?.omega_hat;
        let wa = element_params(&mesh, 0, &data, &approx)?.omega_hat;
        let omega = data.params.omega;
        let diff = (wa - we).norm();
        let rel = if omega > 0.0 { diff / omega } else { diff };
        rows.push(ErrorRow {
            experiment: cfg.experiment.to_string(),
            method: Variant::Asu.to_string(),
            alpha_or_p: alpha,
            beta_or_w: beta,
            rel_err_sq: rel * rel,
            rel_err: rel,
            iters: 0,
            converged: true,
            wall_ms: 0.0,
        });
        curves.push(OmegaHatRow { alpha, beta, exact_re: we.re, exact_im: we.im, approx_re: wa.re, approx_im: wa.im });
    }
    Ok((rows, curves))
}

/// Runs the cartesian product of methods and parameters described by `cfg`.
///
/// Rows come out method-major, then by second parameter, then by grid value,
/// independent of scheduling. Solver breakdowns and non-convergence are
/// recorded per cell. If `cfg.out` is set the tables are written there.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ErrorReport> {
    cfg.validate()?;
    let parallel = !cfg.deterministic;
    let nm = cfg.methods.len();
    let mut report = ErrorReport {
        config: cfg.clone(),
        rows: vec![],
        summary: vec![],
        slopes: vec![],
        convergence: vec![],
        omega_hat: vec![],
        fields: vec![],
    };
    match cfg.experiment {
        ExperimentKind::Stability => {
            return Err(Error::Config("stability probes are produced by stability_report".into()));
        }
        ExperimentKind::OmegaHat => {
            let (rows, curves) = omega_hat_rows(cfg)?;
            report.rows = rows;
            report.omega_hat = curves;
        }
        ExperimentKind::Sweep1d => {
            let mut opts = cfg.solver;
            // one restart cycle covers the whole 1D system
            opts.restart = opts.restart.max(2 * (cfg.mesh_n + 1));
            let per_point = par_map(&grid_points(cfg), parallel, |&(a, b)| {
                let case = case_1d(a, b, cfg.mesh_n)?;
                solve_case(cfg, &case, &opts, Rule::Composite { sub: 8, n: 4 }, (a, b))
            })?;
            report.rows = method_major(per_point, nm).into_iter().map(|c| c.row).collect();
        }
        ExperimentKind::Case2d => {
            let points = grid_points(cfg);
            let per_point = par_map(&points, parallel, |&(p, w)| {
                let case = case_2d(p, w, cfg.mesh_n, SERIES_TERMS)?;
                let cells = solve_case(cfg, &case, &cfg.solver, Rule::Composite { sub: 2, n: 3 }, (p, w))?;
                let exact: Vec<_> = case.mesh.nodes.iter().map(|x| case.oracle.eval(*x)).collect();
                Ok((cells, case.mesh.nodes.clone(), exact))
            })?;
            let mut fields = vec![vec![]; nm];
            let mut cells_pp = vec![];
            for ((cells, nodes, exact), &(p, w)) in per_point.into_iter().zip(&points) {
                for (m, c) in cells.iter().enumerate() {
                    if let Some(f) = &c.field {
                        for (i, x) in nodes.iter().enumerate() {
                            let v = f.get(i);
                            fields[m].push(FieldRow {
                                method: c.row.method.clone(),
                                peclet: p,
                                womersley: w,
                                x: x[0],
                                y: x[1],
                                re: v.re,
                                im: v.im,
                                exact_re: exact[i].re,
                                exact_im: exact[i].im,
                            });
                        }
                    }
                }
                cells_pp.push(cells);
            }
            report.rows = method_major(cells_pp, nm).into_iter().map(|c| c.row).collect();
            report.fields = fields.into_iter().flatten().collect();
        }
        ExperimentKind::Case3d => {
            let per_point = par_map(&grid_points(cfg), parallel, |&(p, w)| {
                let case = case_3d(p, w, cfg.n_axial, cfg.mesh_n, FlowDirection::OutletToInlet)?;
                solve_case(cfg, &case, &cfg.solver, Rule::Composite { sub: 2, n: 3 }, (p, w))
            })?;
            report.rows = method_major(per_point, nm).into_iter().map(|c| c.row).collect();
        }
        ExperimentKind::Convergence => {
            let cells: Vec<(f64, f64, usize)> =
                grid_points(cfg).into_iter().flat_map(|(p, w)| cfg.levels.iter().map(move |&l| (p, w, l))).collect();
            // the finest levels dominate; run them one at a time with threaded kernels
            let per_point = par_map(&cells, false, |&(p, w, nr)| {
                let case = case_3d(p, w, 10 * nr, nr, FlowDirection::OutletToInlet)?;
                let ne = case.mesh.n_elements();
                Ok((solve_case(cfg, &case, &cfg.solver, Rule::Composite { sub: 2, n: 3 }, (p, w))?, ne))
            })?;
            let mut conv = vec![vec![]; nm];
            let mut cells_pp = vec![];
            for ((res, ne), &(p, w, nr)) in per_point.into_iter().zip(&cells) {
                for (m, c) in res.iter().enumerate() {
                    conv[m].push(ConvergenceRow {
                        method: c.row.method.clone(),
                        peclet: p,
                        womersley: w,
                        n_radial: nr,
                        l_over_h: (10 * nr) as f64,
                        n_elements: ne,
                        rel_err: c.row.rel_err,
                        iters: c.row.iters,
                        converged: c.row.converged,
                    });
                }
                cells_pp.push(res);
            }
            report.rows = method_major(cells_pp, nm).into_iter().map(|c| c.row).collect();
            report.convergence = conv.into_iter().flatten().collect();
            for &v in &cfg.methods {
                for (p, w) in grid_points(cfg) {
                    let pts: Vec<&ConvergenceRow> = report
                        .convergence
                        .iter()
                        .filter(|r| r.method == v.to_string() && r.peclet == p && r.womersley == w && r.rel_err.is_finite())
                        .collect();
                    let x: Vec<f64> = pts.iter().map(|r| r.l_over_h).collect();
                    let y: Vec<f64> = pts.iter().map(|r| r.rel_err).collect();
                    let slope = fit_slope(&x, &y).unwrap_or(f64::NAN);
                    report.slopes.push(SlopeFit { method: v.to_string(), peclet: p, womersley: w, slope });
                }
            }
        }
    }
    report.summary = summarize(&report.rows);
    if let Some(dir) = &cfg.out {
        report.write(dir)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let x = [10.0, 20.0, 40.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-2.0)).collect();
        assert!((fit_slope(&x, &y).unwrap() + 2.0).abs() < 1e-12);
        assert!(fit_slope(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn method_major_reorders() {
        let v = method_major(vec![vec![1, 2], vec![3, 4], vec![5, 6]], 2);
        assert_eq!(v, vec![1, 3, 5, 2, 4, 6]);
    }

    #[test]
    fn summary_excludes_diverged() {
        let row = |it: usize, ok: bool| ErrorRow {
            experiment: "x".into(),
            method: "supg".into(),
            alpha_or_p: 1.0,
            beta_or_w: 2.0,
            rel_err_sq: 0.5,
            rel_err: 0.7,
            iters: it,
            converged: ok,
            wall_ms: 0.0,
        };
        let s = summarize(&[row(10, true), row(30, true), row(1000, false)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].diverged, 1);
        assert_eq!(s[0].mean_iters, Some(20.0));
    }
}
