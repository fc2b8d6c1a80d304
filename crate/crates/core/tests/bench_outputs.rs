use tsfem::bench::{case_1d, l2_error, run_experiment, ExperimentConfig, ExperimentKind, ReferenceNorm};
use tsfem::fem::{solve, StabilizationMethod, Variant};
use tsfem::mesh::Rule;
use tsfem::numerics::logspace;
use tsfem::solver::GmresOptions;

fn small_sweep(deterministic: bool) -> ExperimentConfig {
    ExperimentConfig {
        grid: logspace(0.1, 100.0, 7),
        second: vec![0.01, 1.0],
        mesh_n: 20,
        deterministic,
        ..ExperimentConfig::defaults(ExperimentKind::Sweep1d)
    }
}

#[test]
fn deterministic_sweeps_are_byte_identical() {
    let a = run_experiment(&small_sweep(true)).unwrap().rows_csv().unwrap();
    let b = run_experiment(&small_sweep(true)).unwrap().rows_csv().unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("experiment,method,alpha_or_P,beta_or_W,rel_err_sq,rel_err,iters,converged,wall_ms"));
}

#[test]
fn threaded_and_serial_runs_agree() {
    let serial = run_experiment(&small_sweep(true)).unwrap();
    let threaded = run_experiment(&small_sweep(false)).unwrap();
    for (s, t) in serial.rows.iter().zip(&threaded.rows) {
        assert_eq!((&s.method, s.alpha_or_p, s.beta_or_w), (&t.method, t.alpha_or_p, t.beta_or_w));
        assert!((s.rel_err_sq - t.rel_err_sq).abs() <= 1e-12 * s.rel_err_sq.max(1e-12));
    }
}

#[test]
fn rows_are_well_formed() {
    let r = run_experiment(&small_sweep(true)).unwrap();
    assert_eq!(r.rows.len(), 4 * 2 * 7);
    for row in &r.rows {
        assert!(row.rel_err_sq >= 0.0 && row.rel_err >= 0.0);
        assert!((row.rel_err * row.rel_err - row.rel_err_sq).abs() <= 1e-12 * row.rel_err_sq.max(1e-300));
        assert!(row.converged && row.iters > 0, "{row:?}");
    }
}

#[test]
fn galerkin_oscillates_on_a_coarse_advective_grid() {
    let c = case_1d(10.0, 0.1, 10).unwrap();
    let s = solve(&c.mesh, &c.data, &StabilizationMethod::new(Variant::Galerkin), &GmresOptions::with_tol(1e-12)).unwrap();
    let (sq, _) = l2_error(&c.mesh, &s.field, &|x| c.oracle.eval(x), Rule::Composite { sub: 8, n: 4 }).unwrap();
    assert!(sq > 0.1, "{sq}");
}

#[test]
fn asu_is_most_accurate_at_small_frequency() {
    let cfg = ExperimentConfig {
        grid: logspace(0.01, 1000.0, 11),
        second: vec![0.01],
        norm: ReferenceNorm::Nodal,
        deterministic: true,
        ..ExperimentConfig::defaults(ExperimentKind::Sweep1d)
    };
    let r = run_experiment(&cfg).unwrap();
    let asu = r.method_rows(Variant::Asu);
    for v in [Variant::Galerkin, Variant::Supg, Variant::VmsGls] {
        for (a, o) in asu.iter().zip(r.method_rows(v)) {
            assert!(a.rel_err_sq <= o.rel_err_sq * (1.0 + 1e-6) + 1e-20, "{v:?} at alpha {}", a.alpha_or_p);
        }
    }
}

#[cfg(feature = "cli")]
#[test]
fn cli_writes_outputs_and_reports_convergence() {
    let dir = std::env::temp_dir().join(format!("tsfem-cli-{}", std::process::id()));
    let run = std::process::Command::new(env!("CARGO_BIN_EXE_tsfem"))
        .args(["sweep1d", "--alpha-grid", "0.1:10:3", "--beta", "0.1", "--mesh-n", "10", "--deterministic", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stdout).contains("galerkin"));
    let csv = std::fs::read_to_string(dir.join("sweep1d.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4 * 3);
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_tsfem")).args(["sweep1d", "--mesh-n", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
