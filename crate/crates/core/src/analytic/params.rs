use crate::error::{arg, Error, Result};
use crate::numerics::{csinhc, csqrt, Cx, I};

/// `(coth α - 1/α) / α`, smooth through the origin.
fn coth_ratio(alpha: f64) -> f64 {
    let x = alpha.abs();
    if x < 1e-3 {
        let x2 = x * x;
        1.0 / 3.0 - x2 / 45.0 + 2.0 * x2 * x2 / 945.0
    } else {
        (1.0 / x.tanh() - 1.0 / x) / x
    }
}

/// Intrinsic time scale giving nodally exact steady 1D solutions,
/// `τ = (h / 2a)(coth α - 1/α)`.
pub fn tau_exact_1d(alpha: f64, h: f64, a: f64) -> Result<f64> {
    if a == 0.0 || !(h > 0.0) || alpha == 0.0 {
        return arg("exact tau needs nonzero velocity and element Peclet and positive size");
    }
    // h/(2a) * α * f(α) with κ eliminated
    Ok(h / (2.0 * a) * alpha * coth_ratio(alpha))
}

/// Same as [`tau_exact_1d`] parameterized by diffusivity, valid for `a = 0`.
pub fn tau_exact_from_kappa(h: f64, a: f64, kappa: f64) -> Result<f64> {
    if !(h > 0.0) || !(kappa > 0.0) {
        return arg("element size and diffusivity must be positive");
    }
    let alpha = a * h / (2.0 * kappa);
    Ok(h * h * coth_ratio(alpha) / (4.0 * kappa))
}

/// Blends the convective and diffusive time scales,
/// `τ = (τ_conv⁻² + τ_diff⁻²)^(-1/2)`, given their inverses.
pub fn tau_approx(tau_conv_inv: f64, tau_diff_inv: f64) -> Result<f64> {
    if tau_conv_inv < 0.0 || tau_diff_inv < 0.0 {
        return arg("inverse time scales must be non-negative");
    }
    let s = tau_conv_inv * tau_conv_inv + tau_diff_inv * tau_diff_inv;
    if s == 0.0 {
        return arg("both inverse time scales vanish");
    }
    Ok(1.0 / s.sqrt())
}

/// Upper bound on the phase time scale, `1 / (π ω² τ_diff)`. `None` when
/// `ω = 0` and no bound applies.
pub fn tau_max(omega: f64, tau_diff: f64) -> Result<Option<f64>> {
    if !(tau_diff > 0.0) {
        return arg("diffusive time scale must be positive");
    }
    if omega == 0.0 {
        return Ok(None);
    }
    Ok(Some(1.0 / (std::f64::consts::PI * omega * omega * tau_diff)))
}

/// Modified element groups `(α̂, β̂)` that make the ASU stencil nodally exact.
pub fn asu_hat_groups(alpha: f64, beta: f64) -> Result<(Cx, Cx)> {
    if !alpha.is_finite() || !beta.is_finite() {
        return arg("groups must be finite");
    }
    let ca = Cx::new(alpha.cosh(), 0.0);
    let g = csqrt(Cx::new(alpha * alpha, 6.0 * beta));
    let cg = g.cosh();
    let den = cg + 2.0 * ca;
    if den.norm() == 0.0 || !den.norm().is_finite() {
        return Err(Error::Domain("hat groups overflow or vanish".into()));
    }
    let alpha_hat = 3.0 * alpha.sinh() / den;
    let i_beta_hat = (cg - ca) / den;
    Ok((alpha_hat, -I * i_beta_hat))
}

/// ASU modified frequency that makes 1D linear elements nodally exact.
pub fn omega_hat_exact(alpha: f64, beta: f64, omega: f64) -> Result<Cx> {
    if !alpha.is_finite() || !beta.is_finite() || !omega.is_finite() {
        return arg("inputs must be finite");
    }
    Ok(omega * omega_hat_ratio(alpha.abs(), beta))
}

/// `ω̂/ω` in a form that neither overflows for large α nor cancels for
/// small β. With `γ = sqrt(α² + 6iβ)`, `s = γ + α`, `u = (γ - α)/2`:
/// `ω̂/ω = 2α sinh(s/2) sinhc(u) / (s sinh α)`.
fn omega_hat_ratio(alpha: f64, beta: f64) -> Cx {
    if beta == 0.0 {
        return Cx::new(1.0, 0.0);
    }
    let g = csqrt(Cx::new(alpha * alpha, 6.0 * beta));
    let s = g + alpha;
    let u = 3.0 * I * beta / s;
    let shape = 2.0 * csinhc(u) / s;
    if alpha > 20.0 {
        let q = (s / 2.0 - alpha).exp() * (1.0 - (-s).exp()) / (1.0 - (-2.0 * alpha).exp());
        alpha * shape * q
    } else {
        let lead = if alpha < 1e-8 { 1.0 } else { alpha / alpha.sinh() };
        lead * shape * (s / 2.0).sinh()
    }
}

/// Practical modified frequency `ω exp(i ω min(τ, τ_max))`.
pub fn omega_hat_approx(omega: f64, tau: f64, tau_max: Option<f64>) -> Cx {
    let t = match tau_max {
        Some(m) => tau.min(m),
        None => tau,
    };
    omega * (I * omega * t).exp()
}

/// Added ASU diffusivity `2 i ω̂ τ_diff κ`.
pub fn kappa_asu(omega_hat: Cx, tau_diff: f64, kappa: f64) -> Cx {
    2.0 * I * omega_hat * tau_diff * kappa
}

/// Added ASU diffusivity from the element metric, `(2i/3) (G:G)^(-1/2) ω̂`.
pub fn kappa_asu_metric(omega_hat: Cx, g_contract: f64) -> Result<Cx> {
    if !(g_contract > 0.0) {
        return arg("metric contraction must be positive");
    }
    Ok(2.0 / 3.0 * I * omega_hat / g_contract.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_exact_limits() {
        // small α: τ -> h²/(12κ), here κ = a h / (2α)
        let (h, a) = (0.1, 1.0);
        let alpha = 1e-7;
        let kappa = a * h / (2.0 * alpha);
        let t = tau_exact_1d(alpha, h, a).unwrap();
        assert!((t - h * h / (12.0 * kappa)).abs() < 1e-12 * t);
        // large α: τ -> h/(2a)
        let t = tau_exact_1d(1e4, h, a).unwrap();
        assert!((t - h / (2.0 * a) * (1.0 - 1e-4)).abs() < 1e-12);
        // odd symmetry keeps τ positive
        assert!(tau_exact_1d(-3.0, h, -a).unwrap() > 0.0);
        assert!(tau_exact_1d(1.0, h, 0.0).is_err());
    }

    #[test]
    fn tau_exact_forms_agree() {
        for alpha in [1e-5, 0.3, 1.0, 7.0, 300.0] {
            let (h, a) = (0.05, 2.0);
            let kappa = a * h / (2.0 * alpha);
            let t1 = tau_exact_1d(alpha, h, a).unwrap();
            let t2 = tau_exact_from_kappa(h, a, kappa).unwrap();
            assert!((t1 - t2).abs() < 1e-13 * t1);
        }
    }

    #[test]
    fn tau_approx_blends() {
        assert!((tau_approx(3.0, 4.0).unwrap() - 0.2).abs() < 1e-15);
        assert!(tau_approx(0.0, 0.0).is_err());
    }

    #[test]
    fn tau_max_no_limit_without_frequency() {
        assert_eq!(tau_max(0.0, 1.0).unwrap(), None);
        let m = tau_max(2.0, 0.5).unwrap().unwrap();
        assert!((m - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn omega_hat_large_alpha_asymptote() {
        let alpha: f64 = 1e3;
        for beta in [0.05, 0.5, 2.0] {
            let r = omega_hat_exact(alpha, beta, 1.0).unwrap();
            let asym = Cx::new(1.0 - 1.5 * beta * beta / (alpha * alpha), 1.5 * beta / alpha);
            assert!((r - asym).norm() < 5.0 * beta * (1.0 + beta * beta) / (alpha * alpha), "{beta} {r}");
        }
    }

    #[test]
    fn omega_hat_small_alpha_asymptote() {
        for beta in [1e-3, 1e-2, 5e-2] {
            let r = omega_hat_exact(1e-6, beta, 1.0).unwrap();
            let asym = Cx::new(1.0 - beta * beta / 10.0, beta / 2.0);
            assert!((r - asym).norm() < beta.powi(3), "{beta}");
        }
    }

    #[test]
    fn omega_hat_is_finite_over_wide_range() {
        for alpha in [0.0, 1e-9, 1e-3, 1.0, 19.0, 21.0, 500.0, 1e6] {
            for beta in [0.0, 1e-8, 0.1, 10.0, 1e4] {
                let r = omega_hat_exact(alpha, beta, 1.0).unwrap();
                assert!(r.re.is_finite() && r.im.is_finite(), "{alpha} {beta}");
            }
        }
        assert_eq!(omega_hat_exact(3.0, 0.0, 2.0).unwrap(), Cx::new(2.0, 0.0));
    }

    #[test]
    fn omega_hat_branches_join() {
        let beta = 0.7;
        let a = omega_hat_exact(20.0 - 1e-9, beta, 1.0).unwrap();
        let b = omega_hat_exact(20.0 + 1e-9, beta, 1.0).unwrap();
        assert!((a - b).norm() < 1e-10, "{a} {b}");
    }

    #[test]
    fn hat_groups_solve_their_quadratic() {
        for (alpha, beta) in [(0.1, 0.2), (1.0, 1.0), (5.0, 0.3), (0.01, 4.0)] {
            let (ah, bh) = asu_hat_groups(alpha, beta).unwrap();
            let ib = I * bh;
            let ca = alpha.cosh();
            let cg = csqrt(Cx::new(alpha * alpha, 6.0 * beta)).cosh();
            let q = (4.0 * ca + 2.0 * cg) * ib * ib + (4.0 * ca - cg) * ib + ca - cg;
            assert!(q.norm() < 1e-12 * cg.norm().max(1.0));
            // the Galerkin stencil with hat groups is nodally exact
            let n = 10;
            let exact = super::super::Exact1d::new(alpha * n as f64, (6.0 * beta).sqrt() * n as f64).unwrap();
            for node in 0..=n {
                let u = super::super::galerkin_nodal_1d_complex(node, n, ah, bh).unwrap();
                let e = exact.eval(node as f64 / n as f64);
                assert!((u - e).norm() < 1e-9, "{alpha} {beta} {node}");
            }
        }
    }

    #[test]
    fn kappa_forms_agree_in_1d() {
        let (h, kappa) = (0.2, 0.3);
        let w = Cx::new(1.5, 0.4);
        let td = h * h / (12.0 * kappa);
        let g = 4.0 / (h * h);
        let k1 = kappa_asu(w, td, kappa);
        let k2 = kappa_asu_metric(w, g * g).unwrap();
        assert!((k1 - k2).norm() < 1e-15);
    }
}
