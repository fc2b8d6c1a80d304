use super::method::Variant;
use crate::error::{Error, Result};
use crate::numerics::{Cx, I};

/// Frequency, velocity and diffusivity seen by a Galerkin discretization that
/// reproduces a stabilized one on a uniform 1D mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoefficients {
    pub omega: Cx,
    pub velocity: Cx,
    pub kappa: Cx,
}

/// Effective coefficients of each method for linear elements.
pub fn effective_coefficients(
    variant: Variant,
    omega: f64,
    a: f64,
    kappa: f64,
    tau: f64,
    tau_diff: f64,
) -> Result<EffectiveCoefficients> {
    let w = Cx::new(omega, 0.0);
    let av = Cx::new(a, 0.0);
    let k = Cx::new(kappa, 0.0);
    let it = I * omega * tau;
    Ok(match variant {
        Variant::Galerkin => EffectiveCoefficients { omega: w, velocity: av, kappa: k },
        Variant::Supg => EffectiveCoefficients { omega: w, velocity: (1.0 - it) * a, kappa: k + a * a * tau },
        Variant::VmsGls => EffectiveCoefficients {
            omega: (1.0 - it) * omega,
            velocity: (1.0 - 2.0 * it) * a,
            kappa: k + a * a * tau,
        },
        Variant::Asu => {
            let wh = it.exp() * omega;
            EffectiveCoefficients { omega: wh, velocity: av, kappa: k + 2.0 * I * wh * tau_diff * kappa + a * a * tau }
        }
        Variant::RdSupg | Variant::RdVms => {
            return Err(Error::Config("gradient reconstruction has no local effective form".into()))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galerkin_is_identity() {
        let c = effective_coefficients(Variant::Galerkin, 2.0, 3.0, 0.5, 0.1, 0.01).unwrap();
        assert_eq!(c.omega, Cx::new(2.0, 0.0));
        assert_eq!(c.velocity, Cx::new(3.0, 0.0));
        assert_eq!(c.kappa, Cx::new(0.5, 0.0));
    }

    #[test]
    fn vms_velocity_shift_is_twice_supg() {
        let s = effective_coefficients(Variant::Supg, 2.0, 3.0, 0.5, 0.1, 0.01).unwrap();
        let v = effective_coefficients(Variant::VmsGls, 2.0, 3.0, 0.5, 0.1, 0.01).unwrap();
        assert!(((v.velocity - 3.0) - 2.0 * (s.velocity - 3.0)).norm() < 1e-15);
    }
}
