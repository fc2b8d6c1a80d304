use crate::error::{Error, Result};
use crate::fem::{StabilizationMethod, Variant};
use crate::mesh::ElementKind;
use crate::numerics::logspace;
use crate::solver::{GmresOptions, Preconditioner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    OmegaHat,
    Sweep1d,
    Case2d,
    Case3d,
    Convergence,
    Stability,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::OmegaHat => "omega-hat",
            ExperimentKind::Sweep1d => "sweep1d",
            ExperimentKind::Case2d => "case2d",
            ExperimentKind::Case3d => "case3d",
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Stability => "stability",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "omega-hat" => ExperimentKind::OmegaHat,
            "sweep1d" => ExperimentKind::Sweep1d,
            "case2d" => ExperimentKind::Case2d,
            "case3d" => ExperimentKind::Case3d,
            "convergence" => ExperimentKind::Convergence,
            "stability" => ExperimentKind::Stability,
            _ => return Err(Error::Config(format!("unknown experiment {s:?}"))),
        })
    }
}

/// What the numerical field is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceNorm {
    /// The closed-form solution at every quadrature point.
    Pointwise,
    /// The nodal interpolant of the closed-form solution, so only nodal
    /// errors count. A nodally exact method scores zero.
    Nodal,
}

impl fmt::Display for ReferenceNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReferenceNorm::Pointwise => "pointwise",
            ReferenceNorm::Nodal => "nodal",
        })
    }
}

impl FromStr for ReferenceNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pointwise" => Ok(ReferenceNorm::Pointwise),
            "nodal" => Ok(ReferenceNorm::Nodal),
            _ => Err(Error::Config(format!("unknown reference norm {s:?}"))),
        }
    }
}

/// Everything needed to reproduce one sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub methods: Vec<Variant>,
    /// Element Peclet `α` (1D) or Peclet `P` (2D, 3D).
    pub grid: Vec<f64>,
    /// Element frequency `β` (1D) or Womersley `W` (2D, 3D).
    pub second: Vec<f64>,
    /// Elements in 1D, elements per side in 2D, rings in 3D.
    pub mesh_n: usize,
    /// Axial layers of the 3D case mesh.
    pub n_axial: usize,
    /// Ring counts of the convergence study; axial layers are 10× rings.
    pub levels: Vec<usize>,
    pub solver: GmresOptions,
    /// ASU phase limiter. `None` uses the per-dimension default.
    pub limiter: Option<bool>,
    pub norm: ReferenceNorm,
    /// Exact 1D time scale and modified frequency instead of the metric ones.
    pub exact_1d: bool,
    pub probes: usize,
    pub seed: u64,
    /// Serial assembly and zeroed timings for byte-identical output.
    pub deterministic: bool,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults reproducing the published setup of each experiment.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let solver = |tol: f64, max_iters: usize| GmresOptions { tol, restart: 200, max_iters, preconditioner: Preconditioner::Jacobi };
        let base = Self {
            experiment: kind,
            methods: vec![Variant::Galerkin, Variant::Supg, Variant::VmsGls, Variant::Asu],
            grid: vec![],
            second: vec![],
            mesh_n: 0,
            n_axial: 30,
            levels: vec![2, 3, 4, 6, 8],
            solver: solver(1e-4, 1000),
            limiter: None,
            exact_1d: false,
            norm: ReferenceNorm::Pointwise,
            probes: 1000,
            seed: 2024,
            deterministic: false,
            out: None,
        };
        match kind {
            ExperimentKind::OmegaHat => Self { grid: logspace(1e-2, 1e3, 51), second: vec![0.01, 0.1, 1.0], methods: vec![Variant::Asu], ..base },
            ExperimentKind::Sweep1d => Self {
                grid: logspace(1e-2, 1e3, 51),
                second: vec![0.01, 0.1, 1.0],
                mesh_n: 100,
                solver: solver(1e-12, 2000),
                norm: ReferenceNorm::Nodal,
                ..base
            },
            ExperimentKind::Case2d => Self { grid: logspace(1.0, 1e3, 13), second: vec![10.0, 10f64.powf(1.5), 100.0], mesh_n: 10, ..base },
            ExperimentKind::Case3d => Self { grid: logspace(1.0, 1e3, 7), second: vec![10.0, 10f64.powf(1.5), 100.0], mesh_n: 4, ..base },
            ExperimentKind::Convergence => Self { grid: vec![10.0, 1000.0], second: vec![10.0], solver: solver(1e-10, 20000), ..base },
            ExperimentKind::Stability => Self { grid: vec![], second: vec![], ..base },
        }
    }

    /// The single 2D parameter point used for field comparisons,
    /// `P = 1000/(8π) ≈ 40` and `W = 10^1.5`.
    pub fn reference_2d_point() -> (f64, f64) {
        (1000.0 / (8.0 * PI), 10f64.powf(1.5))
    }

    /// Formulation used for `variant` on meshes of `kind`.
    pub fn method(&self, variant: Variant, kind: ElementKind) -> StabilizationMethod {
        let m = if self.exact_1d { StabilizationMethod::exact_1d(variant) } else { StabilizationMethod::for_kind(variant, kind) };
        match self.limiter {
            Some(on) => m.with_limiter(on),
            None => m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let needs_grid = !matches!(self.experiment, ExperimentKind::Stability);
        if needs_grid && (self.grid.is_empty() || self.second.is_empty()) {
            return Err(Error::Config("parameter grids must not be empty".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        if !(self.solver.tol > 0.0 && self.solver.tol < 1.0) {
            return Err(Error::Config("tolerance must lie in (0, 1)".into()));
        }
        if self.grid.iter().chain(&self.second).any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Config("grid values must be finite and non-negative".into()));
        }
        match self.experiment {
            ExperimentKind::Sweep1d if self.mesh_n < 2 => Err(Error::Config("1D sweep needs at least 2 elements".into())),
            ExperimentKind::Case2d | ExperimentKind::Case3d if self.mesh_n < 1 => Err(Error::Config("mesh size must be positive".into())),
            ExperimentKind::Convergence if self.levels.len() < 2 => Err(Error::Config("need at least 2 refinement levels".into())),
            ExperimentKind::Case2d | ExperimentKind::Case3d | ExperimentKind::Convergence
                if self.exact_1d || self.methods.iter().any(|m| m.is_rd()) =>
            {
                Err(Error::Config("exact parameters and gradient reconstruction are 1D only".into()))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for k in [
            ExperimentKind::OmegaHat,
            ExperimentKind::Sweep1d,
            ExperimentKind::Case2d,
            ExperimentKind::Case3d,
            ExperimentKind::Convergence,
            ExperimentKind::Stability,
        ] {
            ExperimentConfig::defaults(k).validate().unwrap();
            assert_eq!(k.to_string().parse::<ExperimentKind>().unwrap(), k);
        }
    }

    #[test]
    fn rejects_bad_tolerance_and_empty_grid() {
        let mut c = ExperimentConfig::defaults(ExperimentKind::Sweep1d);
        c.solver.tol = 1.0;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(ExperimentKind::Case2d);
        c.grid.clear();
        assert!(c.validate().is_err());
    }
}
