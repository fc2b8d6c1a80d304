use crate::error::{arg, Result};
use crate::numerics::{cexpm1, csqrt, Cx, I};

/// Exact solution of the 1D model problem with `φ(0) = 0`, `φ(L) = 1`.
///
/// Evaluated on the normalized coordinate `s = x / L`.
#[derive(Debug, Clone, Copy)]
pub struct Exact1d {
    pub peclet: f64,
    pub womersley: f64,
    r1: Cx,
    r2: Cx,
    /// Set when `P = W = 0` and the solution reduces to `s`.
    pub degenerate: bool,
}

impl Exact1d {
    pub fn new(peclet: f64, womersley: f64) -> Result<Self> {
        if !peclet.is_finite() || !womersley.is_finite() || womersley < 0.0 {
            return arg("Peclet must be finite and Womersley finite and non-negative");
        }
        let root = csqrt(Cx::new(peclet * peclet, 0.0) + I * womersley * womersley);
        Ok(Self {
            peclet,
            womersley,
            r1: peclet + root,
            r2: peclet - root,
            degenerate: peclet == 0.0 && womersley == 0.0,
        })
    }

    /// Characteristic exponents `(r1, r2)`, `Re r1 >= Re r2`.
    pub fn roots(&self) -> (Cx, Cx) {
        (self.r1, self.r2)
    }

    /// Value at normalized position `s` in `[0, 1]`.
    pub fn eval(&self, s: f64) -> Cx {
        if self.degenerate {
            return Cx::new(s, 0.0);
        }
        // factor out exp(r1) and exp(r1 s) so every exponent has Re <= 0
        let d = self.r1 - self.r2;
        let num = -cexpm1(-d * s);
        let den = -cexpm1(-d);
        (self.r1 * (s - 1.0)).exp() * num / den
    }

    /// First derivative with respect to `s`.
    pub fn deriv(&self, s: f64) -> Cx {
        if self.degenerate {
            return Cx::new(1.0, 0.0);
        }
        let d = self.r1 - self.r2;
        let den = -cexpm1(-d);
        (self.r1 * (s - 1.0)).exp() * (self.r1 - self.r2 * (-d * s).exp()) / den
    }
}
