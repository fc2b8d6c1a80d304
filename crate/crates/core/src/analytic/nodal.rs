use crate::error::{arg, Error, Result};
use crate::numerics::{csqrt, Cx, I};

/// Roots of the characteristic equation of the Galerkin three-point stencil
/// on a uniform linear mesh, for complex element groups.
pub fn galerkin_roots(alpha: Cx, beta: Cx) -> Result<(Cx, Cx)> {
    let den = 1.0 - alpha - I * beta;
    if den.norm() < 1e-14 {
        return Err(Error::Singular("stencil leading coefficient vanishes".into()));
    }
    let disc = csqrt(alpha * alpha - 3.0 * beta * beta + 6.0 * I * beta);
    let base = 1.0 + 2.0 * I * beta;
    Ok(((base + disc) / den, (base - disc) / den))
}

/// Discrete Galerkin value at node `a` of a uniform `n`-element mesh with
/// `U_0 = 0`, `U_n = 1`, for possibly complex element groups.
pub fn galerkin_nodal_1d_complex(a: usize, n: usize, alpha: Cx, beta: Cx) -> Result<Cx> {
    if n == 0 || a > n {
        return arg("node index must lie in 0..=n with n >= 1");
    }
    let (r1, r2) = galerkin_roots(alpha, beta)?;
    let (big, small) = if r1.norm() >= r2.norm() { (r1, r2) } else { (r2, r1) };
    if big.norm() == 0.0 {
        return Err(Error::Singular("both stencil roots vanish".into()));
    }
    let q = small / big;
    let nn = n as i32;
    let aa = a as i32;
    if (q - 1.0).norm() < 1e-12 {
        // double root, U_A = A ρ^(A-N) / N
        return Ok(big.powi(aa - nn) * (a as f64 / n as f64));
    }
    let den = 1.0 - q.powi(nn);
    if den.norm() < 1e-13 {
        return Err(Error::Singular("stencil roots give a resonant mesh".into()));
    }
    Ok(big.powi(aa - nn) * (1.0 - q.powi(aa)) / den)
}

/// Real-group convenience wrapper of [`galerkin_nodal_1d_complex`].
pub fn galerkin_nodal_1d(a: usize, n: usize, alpha: f64, beta: f64) -> Result<Cx> {
    galerkin_nodal_1d_complex(a, n, alpha.into(), beta.into())
}

/// All nodal values `U_0..=U_n`.
pub fn galerkin_nodal_field_1d(n: usize, alpha: Cx, beta: Cx) -> Result<Vec<Cx>> {
    (0..=n).map(|a| galerkin_nodal_1d_complex(a, n, alpha, beta)).collect()
}
