//! Element formulations and global assembly.
//!
//! Every complex unknown is split into a real and an imaginary part, node
//! major, so node `A` owns dofs `2A` (real) and `2A + 1` (imaginary). A
//! complex element entry `K` becomes the real block `[[Re K, -Im K], [Im K, Re K]]`.

mod assemble;
mod effective;
mod element;
mod energy;
mod method;
mod rd;

pub use assemble::{assemble, assemble_with, solve, solve_with, AssembledSystem, Solution};
pub use effective::{effective_coefficients, EffectiveCoefficients};
pub use element::{element_matrix, element_params, ElementParams, ElementSystem};
pub use energy::analytic_energy;
pub use method::{OmegaHatMode, ProblemData, StabilizationMethod, TauMode, Variant};
pub use rd::{rd_operator, rd_reconstruct};
