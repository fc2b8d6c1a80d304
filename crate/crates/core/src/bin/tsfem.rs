use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tsfem::bench::{run_experiment, stability_report, ExperimentConfig, ExperimentKind, ReferenceNorm};
use tsfem::fem::Variant;
use tsfem::numerics::logspace;

/// Stabilized time-spectral convection-diffusion experiments.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate against exact ASU modified frequency over (α, β).
    OmegaHat(Opts),
    /// 1D error sweep over element Peclet α for each β.
    Sweep1d(Opts),
    /// Unit-square case over Peclet P for each Womersley W.
    Case2d(Opts),
    /// Cylinder case over Peclet P for each Womersley W.
    Case3d(Opts),
    /// Cylinder mesh refinement study.
    Convergence(Opts),
    /// Random quadratic-form probes of the system matrices.
    Stability(Opts),
}

#[derive(Args)]
struct Opts {
    /// Comma-separated methods: galerkin, supg, vms, asu, rd-supg, rd-vms.
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Variant>>,
    /// Element frequency β (1D) or Womersley W (2D, 3D), comma-separated.
    #[arg(long, alias = "womersley", value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    /// `lo:hi:n` log grid or comma list of α (1D) or P (2D, 3D).
    #[arg(long, alias = "peclet-grid")]
    alpha_grid: Option<String>,
    /// Elements (1D), elements per side (2D) or rings (3D).
    #[arg(long)]
    mesh_n: Option<usize>,
    /// Axial layers of the 3D case mesh.
    #[arg(long)]
    n_axial: Option<usize>,
    /// Ring counts for the convergence study, comma-separated.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    /// GMRES relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    restart: Option<usize>,
    /// Force the ASU phase limiter on or off.
    #[arg(long)]
    limiter: Option<bool>,
    /// Exact 1D time scale and modified frequency.
    #[arg(long)]
    exact_1d: bool,
    /// Error reference: pointwise or nodal.
    #[arg(long)]
    norm: Option<ReferenceNorm>,
    /// Random probes per matrix.
    #[arg(long)]
    probes: Option<usize>,
    /// Probe generator seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Serial assembly and zeroed timings for reproducible output.
    #[arg(long)]
    deterministic: bool,
    /// Output directory for CSV and JSON files.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
    match parts.as_slice() {
        [lo, hi, n] => {
            let n = n.trim().parse::<usize>().map_err(|e| format!("bad count {n:?}: {e}"))?;
            let (lo, hi) = (num(lo)?, num(hi)?);
            if !(lo > 0.0 && hi >= lo && n > 0) {
                return Err("log grid needs 0 < lo <= hi and n > 0".into());
            }
            Ok(logspace(lo, hi, n))
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(format!("cannot parse grid {s:?}")),
    }
}

fn build(kind: ExperimentKind, o: Opts) -> Result<ExperimentConfig, String> {
    let mut c = ExperimentConfig::defaults(kind);
    if let Some(m) = o.methods {
        c.methods = m;
    }
    if let Some(b) = o.beta {
        c.second = b;
    }
    if let Some(g) = o.alpha_grid {
        c.grid = parse_grid(&g)?;
    }
    if let Some(n) = o.mesh_n {
        c.mesh_n = n;
    }
    if let Some(n) = o.n_axial {
        c.n_axial = n;
    }
    if let Some(l) = o.levels {
        c.levels = l;
    }
    if let Some(t) = o.tol {
        c.solver.tol = t;
    }
    if let Some(m) = o.max_iters {
        c.solver.max_iters = m;
    }
    if let Some(r) = o.restart {
        c.solver.restart = r;
    }
    if let Some(n) = o.norm {
        c.norm = n;
    }
    if let Some(p) = o.probes {
        c.probes = p;
    }
    if let Some(s) = o.seed {
        c.seed = s;
    }
    c.limiter = o.limiter;
    c.exact_1d = o.exact_1d;
    c.deterministic = o.deterministic;
    c.out = o.out;
    Ok(c)
}

fn run(kind: ExperimentKind, o: Opts) -> Result<bool, String> {
    let cfg = build(kind, o)?;
    cfg.validate().map_err(|e| e.to_string())?;
    if kind == ExperimentKind::Stability {
        let r = stability_report(&cfg).map_err(|e| e.to_string())?;
        println!("{:<18} {:<9} {:>7} {:>12} {:>12} {:>5} {:>10}", "regime", "method", "limiter", "min", "median", "neg", "energy");
        for row in &r.rows {
            let e = row.energy_residual.map_or("-".to_string(), |v| format!("{v:.1e}"));
            println!(
                "{:<18} {:<9} {:>7} {:>12.4e} {:>12.4e} {:>5} {:>10}",
                row.regime, row.method, row.limiter, row.min, row.median, row.negative, e
            );
        }
        return Ok(true);
    }
    let r = run_experiment(&cfg).map_err(|e| e.to_string())?;
    println!("{:<9} {:>10} {:>9} {:>7} {:>8} {:>12}", "method", "beta_or_W", "cells", "failed", "iters", "mean err²");
    for s in &r.summary {
        let it = s.mean_iters.map_or("-".to_string(), |v| format!("{v:.1}"));
        let er = s.mean_rel_err_sq.map_or("-".to_string(), |v| format!("{v:.3e}"));
        println!("{:<9} {:>10.4} {:>9} {:>7} {:>8} {:>12}", s.method, s.beta_or_w, s.cells, s.diverged, it, er);
    }
    for s in &r.slopes {
        println!("slope {:<9} P={} W={}: {:.3}", s.method, s.peclet, s.womersley, s.slope);
    }
    if let Some(dir) = &cfg.out {
        eprintln!("wrote {}", dir.display());
    }
    Ok(r.all_converged())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, opts) = match cli.command {
        Command::OmegaHat(o) => (ExperimentKind::OmegaHat, o),
        Command::Sweep1d(o) => (ExperimentKind::Sweep1d, o),
        Command::Case2d(o) => (ExperimentKind::Case2d, o),
        Command::Case3d(o) => (ExperimentKind::Case3d, o),
        Command::Convergence(o) => (ExperimentKind::Convergence, o),
        Command::Stability(o) => (ExperimentKind::Stability, o),
    };
    match run(kind, opts) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("some cells did not converge");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
