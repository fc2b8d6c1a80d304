use crate::error::{arg, Result};
use crate::numerics::{cexpm1, csqrt, Cx, I};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Fourier series solution on the unit square with `φ = 1` on the left and
/// top edges, `φ = 0` on the bottom and right edges, flow along `+x`.
///
/// Coordinates are normalized by the side length.
#[derive(Debug, Clone)]
pub struct Series2d {
    pub peclet: f64,
    pub womersley: f64,
    modes: Vec<Mode>,
    /// `sqrt(i) W`
    c: Cx,
}

#[derive(Debug, Clone, Copy)]
struct Mode {
    k: f64,
    rp: Cx,
    rm: Cx,
    b: Cx,
    cn: Cx,
    inv_den: Cx,
}

impl Series2d {
    pub fn new(peclet: f64, womersley: f64, n_terms: usize) -> Result<Self> {
        if !(womersley > 0.0) || !peclet.is_finite() || !womersley.is_finite() {
            return arg("series solution needs finite P and W > 0");
        }
        if n_terms == 0 {
            return arg("at least one series term is required");
        }
        let w2 = womersley * womersley;
        let modes = (1..=n_terms)
            .map(|n| {
                let k = n as f64 * PI;
                let cos = if n % 2 == 0 { 1.0 } else { -1.0 };
                let a = 2.0 * (1.0 - cos) / k;
                let b = 2.0 * k * cos / (I * w2 + k * k);
                let root = csqrt(Cx::new(peclet * peclet + k * k, w2));
                let (rp, rm) = (peclet + root, peclet - root);
                // 1 - exp(r- - r+), computed without cancellation
                let inv_den = 1.0 / (-cexpm1(rm - rp));
                Mode { k, rp, rm, b, cn: a + b, inv_den }
            })
            .collect();
        let c = Cx::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2) * womersley;
        Ok(Self { peclet, womersley, modes, c })
    }

    pub fn n_terms(&self) -> usize {
        self.modes.len()
    }

    /// Value at normalized `(x, y)` in the unit square.
    pub fn eval(&self, x: f64, y: f64) -> Cx {
        let c = self.c;
        // sinh(c y)/sinh(c) with exponents of non-positive real part
        let base = (c * (y - 1.0)).exp() * (-cexpm1(-2.0 * c * y)) / (-cexpm1(-2.0 * c));
        let mut sum = base;
        for m in &self.modes {
            let sy = (m.k * y).sin();
            if sy == 0.0 {
                continue;
            }
            let left = (m.cn - m.b * (-m.rp).exp()) * (m.rm * x).exp();
            let right = (m.b - m.cn * m.rm.exp()) * (m.rp * (x - 1.0)).exp();
            sum += (left + right) * m.inv_den * sy;
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converges_in_term_count() {
        let s1 = Series2d::new(100.0 / (8.0 * PI), 31.6, 200).unwrap();
        let s2 = Series2d::new(100.0 / (8.0 * PI), 31.6, 400).unwrap();
        let (a, b) = (s1.eval(0.5, 0.5), s2.eval(0.5, 0.5));
        assert!((a - b).norm() < 1e-8 * b.norm());
    }

    #[test]
    fn top_and_bottom_edges() {
        let s = Series2d::new(3.0, 10.0, 200).unwrap();
        for x in [0.1, 0.4, 0.8] {
            assert!((s.eval(x, 1.0 - 1e-9) - 1.0).norm() < 1e-3);
            assert!(s.eval(x, 1e-9).norm() < 1e-3);
        }
    }

    #[test]
    fn rejects_zero_womersley() {
        assert!(Series2d::new(1.0, 0.0, 10).is_err());
        assert!(Series2d::new(1.0, 1.0, 0).is_err());
    }
}
