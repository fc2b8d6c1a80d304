use crate::error::{Error, Result};
use crate::mesh::{ElementKind, Mesh};
use crate::numerics::{ComplexField, Cx, PhysicalParams};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Stabilization family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Galerkin,
    Supg,
    VmsGls,
    Asu,
    /// SUPG with the diffusive residual term rebuilt from a projected gradient.
    RdSupg,
    /// VMS/GLS with the diffusive residual term rebuilt from a projected gradient.
    RdVms,
}

impl Variant {
    pub const ALL: [Variant; 6] =
        [Variant::Galerkin, Variant::Supg, Variant::VmsGls, Variant::Asu, Variant::RdSupg, Variant::RdVms];

    pub fn is_rd(self) -> bool {
        matches!(self, Variant::RdSupg | Variant::RdVms)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Galerkin => "galerkin",
            Variant::Supg => "supg",
            Variant::VmsGls => "vms",
            Variant::Asu => "asu",
            Variant::RdSupg => "rd-supg",
            Variant::RdVms => "rd-vms",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "galerkin" | "g" => Ok(Variant::Galerkin),
            "supg" => Ok(Variant::Supg),
            "vms" | "gls" | "vms-gls" | "vms_gls" => Ok(Variant::VmsGls),
            "asu" => Ok(Variant::Asu),
            "rd-supg" | "rd_supg" => Ok(Variant::RdSupg),
            "rd-vms" | "rd_vms" => Ok(Variant::RdVms),
            _ => Err(Error::Config(format!("unknown method {s:?}"))),
        }
    }
}

/// How the intrinsic time scale is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauMode {
    /// Blend of convective and diffusive scales from the element metric.
    Approximate,
    /// `coth` formula, nodally exact for steady 1D problems.
    Exact1d,
}

/// How the ASU modified frequency is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaHatMode {
    /// `ω exp(i ω τ)`, optionally limited.
    Approximate,
    /// Nodally exact 1D value.
    Exact1d,
}

/// A complete choice of formulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilizationMethod {
    pub variant: Variant,
    pub tau_mode: TauMode,
    pub omega_hat_mode: OmegaHatMode,
    /// Cap the phase time scale in the approximate modified frequency.
    pub limiter: bool,
}

impl StabilizationMethod {
    pub fn new(variant: Variant) -> Self {
        Self { variant, tau_mode: TauMode::Approximate, omega_hat_mode: OmegaHatMode::Approximate, limiter: false }
    }

    /// Defaults for a mesh type: limiter on in 2D and 3D, off in 1D.
    pub fn for_kind(variant: Variant, kind: ElementKind) -> Self {
        Self { limiter: kind != ElementKind::Line2, ..Self::new(variant) }
    }

    /// Exact 1D time scale and modified frequency.
    pub fn exact_1d(variant: Variant) -> Self {
        Self { tau_mode: TauMode::Exact1d, omega_hat_mode: OmegaHatMode::Exact1d, ..Self::new(variant) }
    }

    pub fn with_limiter(mut self, on: bool) -> Self {
        self.limiter = on;
        self
    }

    /// Rejects combinations that only make sense on 1D meshes.
    pub fn check_admissible(&self, kind: ElementKind) -> Result<()> {
        let exact = self.tau_mode == TauMode::Exact1d || self.omega_hat_mode == OmegaHatMode::Exact1d;
        if kind != ElementKind::Line2 && (exact || self.variant.is_rd()) {
            return Err(Error::Config(format!(
                "{} with exact 1D parameters or gradient reconstruction needs a 1D mesh",
                self.variant
            )));
        }
        Ok(())
    }
}

impl fmt::Display for StabilizationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.variant)
    }
}

/// Coefficients, sources and boundary conditions of one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemData {
    pub params: PhysicalParams,
    /// Optional per-element velocity overriding `params.velocity`.
    pub element_velocity: Option<Vec<[f64; 3]>>,
    /// Optional nodal source, interpolated with the shape functions.
    pub source: Option<ComplexField>,
    /// Dirichlet values per node set. Later entries win on shared nodes.
    pub dirichlet: Vec<(String, Cx)>,
    /// Prescribed normal flux `κ ∂φ/∂n` per node set.
    pub neumann: Vec<(String, Cx)>,
}

impl ProblemData {
    pub fn new(params: PhysicalParams) -> Self {
        Self { params, element_velocity: None, source: None, dirichlet: Vec::new(), neumann: Vec::new() }
    }

    pub fn dirichlet(mut self, set: &str, value: Cx) -> Self {
        self.dirichlet.push((set.to_string(), value));
        self
    }

    pub fn neumann(mut self, set: &str, flux: Cx) -> Self {
        self.neumann.push((set.to_string(), flux));
        self
    }

    pub fn velocity(&self, e: usize) -> [f64; 3] {
        match &self.element_velocity {
            Some(v) => v[e],
            None => self.params.velocity,
        }
    }

    pub fn validate(&self, mesh: &Mesh) -> Result<()> {
        self.params.validate()?;
        if let Some(v) = &self.element_velocity {
            if v.len() != mesh.n_elements() {
                return Err(Error::Config("element velocity count does not match the mesh".into()));
            }
        }
        if let Some(q) = &self.source {
            if q.len() != mesh.n_nodes() || q.im.len() != mesh.n_nodes() {
                return Err(Error::Config("source length does not match the mesh".into()));
            }
        }
        for (name, _) in self.dirichlet.iter().chain(&self.neumann) {
            mesh.node_set(name)?;
        }
        if let Some((n, _)) = self.neumann.iter().find(|(n, _)| self.dirichlet.iter().any(|(d, _)| d == n)) {
            return Err(Error::Config(format!("set {n:?} is both Dirichlet and Neumann")));
        }
        Ok(())
    }
}
