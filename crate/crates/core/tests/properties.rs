//! Randomized invariants of the analytic, numeric and mesh layers.

use proptest::prelude::*;
use tsfem::analytic::{asu_hat_groups, galerkin_nodal_1d_complex, galerkin_nodal_field_1d, omega_hat_approx, Exact1d};
use tsfem::mesh::{shape_functions, ElementKind};
use tsfem::numerics::{cx_fn, dimensionless_groups, Cx, CxFn, PhysicalParams};

proptest! {
    #[test]
    fn halving_the_element_scales_groups(omega in 0.0..1e3f64, a in -50.0..50.0f64, kappa in 1e-3..10.0f64, h in 1e-3..1.0f64) {
        let p = PhysicalParams::new_1d(omega, a, kappa, 1.0);
        let fine = dimensionless_groups(&p, h).unwrap();
        let coarse = dimensionless_groups(&p, 2.0 * h).unwrap();
        prop_assert_eq!(coarse.alpha, 2.0 * fine.alpha);
        prop_assert_eq!(coarse.beta, 4.0 * fine.beta);
    }

    #[test]
    fn exponential_is_additive(r1 in -2.5..2.5f64, i1 in -2.5..2.5f64, r2 in -2.5..2.5f64, i2 in -2.5..2.5f64) {
        let (z1, z2) = (Cx::new(r1, i1), Cx::new(r2, i2));
        let lhs = cx_fn(CxFn::Exp, z1).unwrap() * cx_fn(CxFn::Exp, z2).unwrap();
        let rhs = cx_fn(CxFn::Exp, z1 + z2).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn galerkin_nodal_solution_satisfies_its_stencil(alpha in -20.0..20.0f64, beta in 0.0..5.0f64, n in 2usize..40) {
        prop_assume!((1.0 - alpha).abs() > 1e-3 || beta > 1e-3);
        let u = galerkin_nodal_field_1d(n, alpha.into(), beta.into()).unwrap();
        let ib = Cx::new(0.0, beta);
        prop_assert!(u[0].norm() < 1e-12);
        prop_assert!((u[n] - 1.0).norm() < 1e-12);
        for k in 1..n {
            let terms = [(ib + alpha - 1.0) * u[k + 1], (4.0 * ib + 2.0) * u[k], (ib - alpha - 1.0) * u[k - 1]];
            let scale: f64 = terms.iter().map(|t| t.norm()).sum::<f64>().max(1e-300);
            prop_assert!((terms[0] + terms[1] + terms[2]).norm() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn approximate_frequency_is_its_taylor_series(omega in 1e-3..100.0f64, frac in 0.0..1.0f64) {
        let tau = frac / omega;
        let z = Cx::new(0.0, omega * tau);
        let mut term = Cx::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..40 {
            term = term * z / k as f64;
            sum += term;
        }
        let got = omega_hat_approx(omega, tau, None);
        prop_assert!((got - sum * omega).norm() <= 4e-16 * omega * 8.0);
    }

    #[test]
    fn exact_solution_satisfies_the_ode(peclet in -50.0..50.0f64, womersley in 0.0..30.0f64, s in 0.05..0.95f64) {
        let e = Exact1d::new(peclet, womersley).unwrap();
        let d = 1e-3;
        let f = |t: f64| e.eval(t);
        let c1 = [-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0];
        let c2 = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
        let (mut dx, mut dxx) = (Cx::new(0.0, 0.0), Cx::new(0.0, 0.0));
        for k in 0..7 {
            let v = f(s + (k as f64 - 3.0) * d);
            dx += v * (c1[k] / (60.0 * d));
            dxx += v * (c2[k] / (180.0 * d * d));
        }
        let terms = [Cx::new(0.0, womersley * womersley) * f(s), dx * (2.0 * peclet), -dxx];
        // the second-difference roundoff floor is about 1e-10 |φ|
        let scale: f64 = terms.iter().map(|t| t.norm()).sum::<f64>() + f(s).norm();
        prop_assume!(scale > 1e-8);
        prop_assert!((terms[0] + terms[1] + terms[2]).norm() <= 1e-8 * scale, "residual {}", (terms[0] + terms[1] + terms[2]).norm() / scale);
    }

    #[test]
    fn shape_functions_partition_unity(x in -1.0..1.0f64, y in -1.0..1.0f64, z in 0.0..1.0f64) {
        let points = [
            (ElementKind::Line2, [x, 0.0, 0.0]),
            (ElementKind::Quad4, [x, y, 0.0]),
            (ElementKind::Tet4, [0.5 * (x + 1.0) * (1.0 - z), 0.5 * (y + 1.0) * (1.0 - z) * 0.5, 0.5 * z]),
        ];
        for (kind, xi) in points {
            let (n, g) = shape_functions(kind, xi);
            prop_assert!((n.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
            for d in 0..3 {
                prop_assert!(g.iter().map(|v| v[d]).sum::<f64>().abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn hat_groups_make_the_stencil_nodally_exact(alpha in -8.0..8.0f64, beta in 0.0..4.0f64, n in 2usize..12) {
        let (alpha_hat, beta_hat) = asu_hat_groups(alpha, beta).unwrap();
        let peclet = alpha * n as f64;
        let womersley = (6.0 * beta).sqrt() * n as f64;
        let exact = Exact1d::new(peclet, womersley).unwrap();
        for k in 0..=n {
            let u = galerkin_nodal_1d_complex(k, n, alpha_hat, beta_hat).unwrap();
            let e = exact.eval(k as f64 / n as f64);
            prop_assert!((u - e).norm() <= 1e-9 * e.norm().max(1e-3), "k={} {} vs {}", k, u, e);
        }
    }
}
