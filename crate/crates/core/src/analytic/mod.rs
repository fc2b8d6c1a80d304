//! Closed-form solutions and stabilization parameters used both by the
//! element routines and as test oracles.

mod exact1d;
mod nodal;
mod params;
mod series2d;
mod temporal;

pub use exact1d::Exact1d;
pub use nodal::{galerkin_nodal_1d, galerkin_nodal_1d_complex, galerkin_nodal_field_1d, galerkin_roots};
pub use params::{
    asu_hat_groups, kappa_asu, kappa_asu_metric, omega_hat_approx, omega_hat_exact, tau_approx,
    tau_exact_1d, tau_exact_from_kappa, tau_max,
};
pub use series2d::Series2d;
pub use temporal::{temporal_reference_1d, temporal_supg_1d, TemporalTrace};
