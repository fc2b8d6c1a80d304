//! Experiment drivers: canonical 1D/2D/3D cases, error norms, parameter
//! sweeps, mesh convergence and stability probes.

mod cases;
mod config;
mod error;
mod run;
mod stability;

pub use cases::{case_1d, case_2d, case_3d, Case, FlowDirection, Oracle};
pub use config::{ExperimentConfig, ExperimentKind, ReferenceNorm};
pub use error::{l2_error, l2_error_sampled, sample_interpolant, sample_oracle, ReferenceSamples};
pub use run::{fit_slope, run_experiment, ConvergenceRow, ErrorReport, ErrorRow, GroupSummary};
pub use stability::{probe_matrix, stability_report, ProbeStats, StabilityReport, StabilityRow};
