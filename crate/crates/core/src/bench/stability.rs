use super::cases::{case_1d, case_2d, case_3d, FlowDirection};
use super::config::ExperimentConfig;
use crate::error::Result;
use crate::fem::{analytic_energy, assemble_with, ProblemData, StabilizationMethod, Variant};
use crate::mesh::{ElementKind, Mesh};
use crate::numerics::ComplexField;
use crate::solver::{quadratic_form, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Summary of `cᵀ A c` over unit random vectors `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeStats {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub negative: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub regime: String,
    pub method: String,
    pub limiter: bool,
    pub probes: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub negative: usize,
    /// Worst relative gap between the closed-form energy and the matrix
    /// quadratic form. Absent for gradient reconstruction variants.
    pub energy_residual: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    pub seed: u64,
    pub probes: usize,
    pub rows: Vec<StabilityRow>,
}

impl StabilityReport {
    pub fn find(&self, regime: &str, method: Variant, limiter: bool) -> Option<&StabilityRow> {
        let name = method.to_string();
        self.rows.iter().find(|r| r.regime == regime && r.method == name && r.limiter == limiter)
    }

    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut w = csv::Writer::from_writer(vec![]);
        for r in &self.rows {
            w.serialize(r)?;
        }
        let csv_path = dir.join("stability.csv");
        let json_path = dir.join("stability.json");
        std::fs::write(&csv_path, w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?)?;
        std::fs::write(&json_path, serde_json::to_string_pretty(self)?)?;
        Ok(vec![csv_path, json_path])
    }
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut c: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        c.iter_mut().for_each(|v| *v /= norm);
    }
    c
}

/// Quadratic-form statistics of `a` over `probes` random unit vectors.
pub fn probe_matrix(a: &SparseMatrix, probes: usize, rng: &mut ChaCha8Rng) -> ProbeStats {
    let mut vals: Vec<f64> = (0..probes).map(|_| quadratic_form(a, &unit_vector(rng, a.n()))).collect();
    vals.sort_by(f64::total_cmp);
    if vals.is_empty() {
        return ProbeStats { min: f64::NAN, median: f64::NAN, max: f64::NAN, negative: 0 };
    }
    ProbeStats {
        min: vals[0],
        median: vals[vals.len() / 2],
        max: vals[vals.len() - 1],
        negative: vals.iter().filter(|v| **v < 0.0).count(),
    }
}

struct Regime {
    label: &'static str,
    mesh: Mesh,
    data: ProblemData,
}

/// Probe settings: diffusive and advective 1D, 1D with `ωh/a = 15` and
/// `α = 10`, the 2D reference point, and the cylinder at `W = 100`.
fn regimes() -> Result<Vec<Regime>> {
    let mut out = vec![];
    for (label, alpha, beta, n) in [("1d-diffusive", 0.5, 0.1, 8), ("1d-advective", 10.0, 0.1, 8), ("1d-oscillatory", 10.0, 50.0, 4)] {
        let c = case_1d(alpha, beta, n)?;
        out.push(Regime { label, mesh: c.mesh, data: c.data });
    }
    let (p, w) = ExperimentConfig::reference_2d_point();
    let c = case_2d(p, w, 10, 1)?;
    out.push(Regime { label: "2d-reference", mesh: c.mesh, data: c.data });
    let c = case_3d(10.0, 100.0, 30, 4, FlowDirection::OutletToInlet)?;
    out.push(Regime { label: "3d-womersley-100", mesh: c.mesh, data: c.data });
    Ok(out)
}

const ENERGY_FIELDS: usize = 100;

fn probe_cell(regime: &Regime, method: &StabilizationMethod, cfg: &ExperimentConfig, stream: u64) -> Result<StabilityRow> {
    let sys = assemble_with(&regime.mesh, &regime.data, method, !cfg.deterministic)?;
    let dofs = sys.interior_dofs();
    let a = sys.matrix.submatrix(&dofs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let stats = probe_matrix(&a, cfg.probes, &mut rng);
    let energy_residual = if method.variant.is_rd() {
        None
    } else {
        let mut worst: f64 = 0.0;
        for _ in 0..ENERGY_FIELDS.min(cfg.probes.max(1)) {
            let c = unit_vector(&mut rng, a.n());
            let mut full = vec![0.0; 2 * regime.mesh.n_nodes()];
            for (k, &d) in dofs.iter().enumerate() {
                full[d] = c[k];
            }
            let q = quadratic_form(&a, &c);
            let e = analytic_energy(&regime.mesh, &regime.data, method, &ComplexField::from_interleaved(&full))?;
            let scale = q.abs().max(e.abs());
            if scale > 0.0 {
                worst = worst.max((q - e).abs() / scale);
            }
        }
        Some(worst)
    };
    Ok(StabilityRow {
        regime: regime.label.to_string(),
        method: method.variant.to_string(),
        limiter: method.limiter,
        probes: cfg.probes,
        min: stats.min,
        median: stats.median,
        max: stats.max,
        negative: stats.negative,
        energy_residual,
    })
}

/// Random quadratic-form probes of the interior system matrix for every
/// method in `cfg` across a fixed set of regimes. On 2D and 3D regimes ASU
/// is probed with the phase limiter both on and off. Each cell draws from
/// its own stream of the seeded generator.
pub fn stability_report(cfg: &ExperimentConfig) -> Result<StabilityReport> {
    let regs = regimes()?;
    let mut cells = vec![];
    for (ri, r) in regs.iter().enumerate() {
        for (mi, &v) in cfg.methods.iter().enumerate() {
            if v.is_rd() && r.mesh.kind != ElementKind::Line2 {
                continue;
            }
            let m = cfg.method(v, r.mesh.kind);
            let stream = (ri * 64 + mi * 2) as u64;
            cells.push((ri, m, stream));
            if v == Variant::Asu && r.mesh.kind != ElementKind::Line2 {
                cells.push((ri, m.with_limiter(!m.limiter), stream + 1));
            }
        }
    }
    let run = |&(ri, m, s): &(usize, StabilizationMethod, u64)| probe_cell(&regs[ri], &m, cfg, s);
    #[cfg(feature = "parallel")]
    let rows: Vec<StabilityRow> = if cfg.deterministic {
        cells.iter().map(run).collect::<Result<_>>()?
    } else {
        use rayon::prelude::*;
        cells.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<StabilityRow> = cells.iter().map(run).collect::<Result<_>>()?;
    let report = StabilityReport { seed: cfg.seed, probes: cfg.probes, rows };
    if let Some(dir) = &cfg.out {
        report.write(dir)?;
    }
    Ok(report)
}
