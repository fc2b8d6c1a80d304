//! Complex scalar helpers, nodal complex fields and dimensionless groups.

use crate::error::{arg, Error, Result};
use serde::{Deserialize, Serialize};

/// Complex double.
pub type Cx = num_complex::Complex64;

/// Imaginary unit.
pub const I: Cx = Cx::new(0.0, 1.0);

/// Elementary complex functions exposed through [`cx_fn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxFn {
    Exp,
    Sqrt,
    Sinh,
    Cosh,
    Coth,
}

/// Evaluates an elementary function on the principal branch.
///
/// `Sqrt` returns the root with non-negative real part, and with positive
/// imaginary part when the real part vanishes. `Coth` fails at its poles.
pub fn cx_fn(kind: CxFn, z: Cx) -> Result<Cx> {
    let v = match kind {
        CxFn::Exp => z.exp(),
        CxFn::Sqrt => csqrt(z),
        CxFn::Sinh => z.sinh(),
        CxFn::Cosh => z.cosh(),
        CxFn::Coth => {
            let s = z.sinh();
            if s.norm() == 0.0 || z == Cx::new(0.0, 0.0) {
                return Err(Error::Domain(format!("coth has a pole at {z}")));
            }
            z.cosh() / s
        }
    };
    Ok(v)
}

/// Principal square root with the sign convention of [`cx_fn`].
pub fn csqrt(z: Cx) -> Cx {
    let r = z.sqrt();
    if r.re == 0.0 && r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn cexpm1(z: Cx) -> Cx {
    if z.norm() < 1e-3 {
        // Taylor series, 8 terms are plenty below 1e-3
        let mut term = z;
        let mut sum = z;
        for k in 2..10 {
            term = term * z / k as f64;
            sum += term;
        }
        sum
    } else {
        z.exp() - 1.0
    }
}

/// `sinh(z)/z`, equal to 1 at the origin.
pub fn csinhc(z: Cx) -> Cx {
    if z.norm() < 1e-4 {
        1.0 + z * z / 6.0
    } else {
        z.sinh() / z
    }
}

/// Nodal complex field stored as a pair of real vectors.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexField {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexField {
    pub fn zeros(n: usize) -> Self {
        Self { re: vec![0.0; n], im: vec![0.0; n] }
    }

    pub fn from_complex(values: &[Cx]) -> Self {
        Self {
            re: values.iter().map(|v| v.re).collect(),
            im: values.iter().map(|v| v.im).collect(),
        }
    }

    /// Builds a field from node-major interleaved `[re, im]` unknowns.
    pub fn from_interleaved(dofs: &[f64]) -> Self {
        Self {
            re: dofs.iter().step_by(2).copied().collect(),
            im: dofs.iter().skip(1).step_by(2).copied().collect(),
        }
    }

    pub fn to_interleaved(&self) -> Vec<f64> {
        self.re.iter().zip(&self.im).flat_map(|(&r, &i)| [r, i]).collect()
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn get(&self, node: usize) -> Cx {
        Cx::new(self.re[node], self.im[node])
    }

    pub fn set(&mut self, node: usize, v: Cx) {
        self.re[node] = v.re;
        self.im[node] = v.im;
    }

    pub fn to_complex(&self) -> Vec<Cx> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

/// Physical parameters of a frequency-domain problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Advection velocity. Only the first component is used in 1D.
    pub velocity: [f64; 3],
    /// Diffusivity.
    pub kappa: f64,
    /// Domain length scale.
    pub length: f64,
}

impl PhysicalParams {
    pub fn new(omega: f64, velocity: [f64; 3], kappa: f64, length: f64) -> Self {
        Self { omega, velocity, kappa, length }
    }

    pub fn new_1d(omega: f64, a: f64, kappa: f64, length: f64) -> Self {
        Self::new(omega, [a, 0.0, 0.0], kappa, length)
    }

    /// Parameters reproducing the given Peclet and Womersley numbers with
    /// unit diffusivity, velocity along `axis`.
    pub fn from_groups(peclet: f64, womersley: f64, length: f64, axis: usize) -> Result<Self> {
        if length <= 0.0 || axis > 2 || womersley < 0.0 {
            return arg("length must be positive, axis in 0..3 and W >= 0");
        }
        let kappa = 1.0;
        let mut velocity = [0.0; 3];
        velocity[axis] = 2.0 * peclet * kappa / length;
        let omega = womersley * womersley * kappa / (length * length);
        Ok(Self { omega, velocity, kappa, length })
    }

    /// Speed with sign kept when the flow is aligned with one axis.
    pub fn signed_speed(&self) -> f64 {
        let nz: Vec<f64> = self.velocity.iter().copied().filter(|v| *v != 0.0).collect();
        if nz.len() == 1 {
            nz[0]
        } else {
            self.speed()
        }
    }

    pub fn speed(&self) -> f64 {
        self.velocity.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) || !self.kappa.is_finite() {
            return arg("diffusivity must be positive and finite");
        }
        if !(self.length > 0.0) {
            return arg("length must be positive");
        }
        if !(self.omega >= 0.0) || !self.omega.is_finite() {
            return arg("frequency must be non-negative and finite");
        }
        if self.velocity.iter().any(|v| !v.is_finite()) {
            return arg("velocity must be finite");
        }
        Ok(())
    }
}

/// Global and element-level dimensionless groups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessGroups {
    /// Peclet number `a L / (2 κ)`.
    pub peclet: f64,
    /// Womersley number `L sqrt(ω / κ)`.
    pub womersley: f64,
    /// Element Peclet number `a h / (2 κ)`.
    pub alpha: f64,
    /// Element frequency number `ω h² / (6 κ)`.
    pub beta: f64,
}

/// Computes the four groups for element size `h`.
pub fn dimensionless_groups(params: &PhysicalParams, h: f64) -> Result<DimensionlessGroups> {
    params.validate()?;
    if !(h > 0.0) {
        return arg("element size must be positive");
    }
    let a = params.signed_speed();
    let k = params.kappa;
    Ok(DimensionlessGroups {
        peclet: a * params.length / (2.0 * k),
        womersley: params.length * (params.omega / k).sqrt(),
        alpha: a * h / (2.0 * k),
        beta: params.omega * h * h / (6.0 * k),
    })
}

/// `n` points log-spaced between `lo` and `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n).map(|k| 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_branch() {
        let r = cx_fn(CxFn::Sqrt, Cx::new(-4.0, -0.0)).unwrap();
        assert_eq!(r, Cx::new(0.0, 2.0));
        let r = cx_fn(CxFn::Sqrt, Cx::new(0.0, 2.0)).unwrap();
        assert!((r - Cx::new(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn coth_pole_is_an_error() {
        assert!(matches!(cx_fn(CxFn::Coth, Cx::new(0.0, 0.0)), Err(Error::Domain(_))));
        let c = cx_fn(CxFn::Coth, Cx::new(30.0, 0.0)).unwrap();
        assert!((c.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expm1_matches_direct_form_away_from_zero() {
        for z in [Cx::new(1e-4, 2e-4), Cx::new(0.3, -0.2), Cx::new(-2.0, 1.0)] {
            let direct = z.exp() - 1.0;
            assert!((cexpm1(z) - direct).norm() <= 1e-12 * direct.norm().max(1e-300) + 1e-17);
        }
        let tiny = Cx::new(1e-12, 0.0);
        assert!((cexpm1(tiny).re - (1e-12 + 5e-25)).abs() < 1e-27);
    }

    #[test]
    fn interleaving_round_trips() {
        let f = ComplexField { re: vec![1.0, 2.0], im: vec![3.0, 4.0] };
        assert_eq!(f.to_interleaved(), vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(ComplexField::from_interleaved(&f.to_interleaved()), f);
    }

    #[test]
    fn groups_example() {
        let p = PhysicalParams::new_1d(1.0, 1.0, 0.01, 1.0);
        let g = dimensionless_groups(&p, 0.1).unwrap();
        assert!((g.peclet - 50.0).abs() < 1e-12);
        assert!((g.womersley - 10.0).abs() < 1e-12);
        assert!((g.alpha - 5.0).abs() < 1e-12);
        assert!((g.beta - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn groups_reject_bad_input() {
        let p = PhysicalParams::new_1d(1.0, 1.0, 0.0, 1.0);
        assert!(dimensionless_groups(&p, 0.1).is_err());
        let p = PhysicalParams::new_1d(1.0, 1.0, 1.0, 1.0);
        assert!(dimensionless_groups(&p, 0.0).is_err());
    }
}
