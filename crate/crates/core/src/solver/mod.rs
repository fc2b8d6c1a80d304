//! Sparse storage, restarted GMRES and a small dense LU.

mod dense;
mod gmres;
mod sparse;

pub use dense::{DenseLu, DenseMatrix};
pub use gmres::{gmres, GmresOptions, Preconditioner, SolveReport};
pub use sparse::SparseMatrix;

/// `cᵀ A c`
pub fn quadratic_form(a: &SparseMatrix, c: &[f64]) -> f64 {
    let mut y = vec![0.0; a.n()];
    a.matvec(c, &mut y);
    c.iter().zip(&y).map(|(x, y)| x * y).sum()
}
