use crate::analytic::{Exact1d, Series2d};
use crate::error::{arg, Result};
use crate::fem::ProblemData;
use crate::mesh::{cylinder_tet_3d, structured_quad_2d, uniform_1d, Mesh};
use crate::numerics::{Cx, PhysicalParams};

/// Closed-form reference attached to a case.
#[derive(Debug, Clone)]
pub enum Oracle {
    /// 1D solution along coordinate `axis`, normalized by `length`.
    Line { exact: Exact1d, length: f64, axis: usize },
    /// Unit-square series solution scaled by `length`.
    Square { series: Series2d, length: f64 },
}

impl Oracle {
    pub fn eval(&self, x: [f64; 3]) -> Cx {
        match self {
            Oracle::Line { exact, length, axis } => exact.eval(x[*axis] / length),
            Oracle::Square { series, length } => series.eval(x[0] / length, x[1] / length),
        }
    }
}

/// Mesh, data and reference solution of one benchmark problem.
#[derive(Debug, Clone)]
pub struct Case {
    pub mesh: Mesh,
    pub data: ProblemData,
    pub oracle: Oracle,
}

/// 1D problem on `n` elements parameterized by element groups.
///
/// Flow runs from right to left so oscillations enter through the `φ = 1`
/// end; `alpha` is the magnitude of the element Peclet number. Uses
/// `L = 1`, `κ = 1`.
pub fn case_1d(alpha: f64, beta: f64, n: usize) -> Result<Case> {
    if alpha < 0.0 || beta < 0.0 {
        return arg("group magnitudes must be non-negative");
    }
    let h = 1.0 / n as f64;
    let a = -2.0 * alpha / h;
    let omega = 6.0 * beta / (h * h);
    let params = PhysicalParams::new_1d(omega, a, 1.0, 1.0);
    let mesh = uniform_1d(n, 1.0)?;
    let data = ProblemData::new(params).dirichlet("left", Cx::new(0.0, 0.0)).dirichlet("right", Cx::new(1.0, 0.0));
    let exact = Exact1d::new(a / 2.0, omega.sqrt())?;
    Ok(Case { mesh, data, oracle: Oracle::Line { exact, length: 1.0, axis: 0 } })
}

/// Unit square on an `n × n` grid, flow along `+x`, `φ = 1` on the left and
/// top edges and `φ = 0` on the bottom and right edges.
pub fn case_2d(peclet: f64, womersley: f64, n: usize, series_terms: usize) -> Result<Case> {
    let params = PhysicalParams::from_groups(peclet, womersley, 1.0, 0)?;
    let mesh = structured_quad_2d(n, n, 1.0)?;
    // corners take the last matching entry
    let data = ProblemData::new(params)
        .dirichlet("bottom", Cx::new(0.0, 0.0))
        .dirichlet("right", Cx::new(0.0, 0.0))
        .dirichlet("top", Cx::new(1.0, 0.0))
        .dirichlet("left", Cx::new(1.0, 0.0));
    let series = Series2d::new(peclet, womersley, series_terms)?;
    Ok(Case { mesh, data, oracle: Oracle::Square { series, length: 1.0 } })
}

/// Axial flow orientation in the cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowDirection {
    /// From the `φ = 0` inlet towards the `φ = 1` outlet.
    InletToOutlet,
    /// From the oscillating `φ = 1` end towards the `φ = 0` end.
    OutletToInlet,
}

/// Cylinder of unit length and diameter 0.2 with `φ = 0` at the inlet,
/// `φ = 1` at the outlet and zero flux through the wall.
pub fn case_3d(peclet: f64, womersley: f64, n_axial: usize, n_radial: usize, flow: FlowDirection) -> Result<Case> {
    let signed = match flow {
        FlowDirection::InletToOutlet => peclet,
        FlowDirection::OutletToInlet => -peclet,
    };
    let params = PhysicalParams::from_groups(signed, womersley, 1.0, 2)?;
    let mesh = cylinder_tet_3d(0.1, 1.0, n_axial, n_radial)?;
    let data = ProblemData::new(params)
        .dirichlet("inlet", Cx::new(0.0, 0.0))
        .dirichlet("outlet", Cx::new(1.0, 0.0))
        .neumann("wall", Cx::new(0.0, 0.0));
    let exact = Exact1d::new(signed, womersley)?;
    Ok(Case { mesh, data, oracle: Oracle::Line { exact, length: 1.0, axis: 2 } })
}
