use super::element::{element_matrix, element_params, ElementSystem};
use super::method::{ProblemData, StabilizationMethod, Variant};
use super::rd::rd_operator;
use crate::error::{Error, Result};
use crate::mesh::{element_quadrature, Mesh, Rule};
use crate::numerics::{ComplexField, Cx, I};
use crate::solver::{gmres, GmresOptions, SolveReport, SparseMatrix};

/// Global real system with Dirichlet conditions applied.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub matrix: SparseMatrix,
    pub rhs: Vec<f64>,
    /// Prescribed value per node, if any.
    pub dirichlet: Vec<Option<Cx>>,
}

impl AssembledSystem {
    /// Real dofs not fixed by Dirichlet conditions.
    pub fn interior_dofs(&self) -> Vec<usize> {
        self.dirichlet
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_none())
            .flat_map(|(n, _)| [2 * n, 2 * n + 1])
            .collect()
    }

    /// Matrix restricted to the interior dofs.
    pub fn interior_matrix(&self) -> Result<SparseMatrix> {
        self.matrix.submatrix(&self.interior_dofs())
    }
}

/// Field and solver statistics.
#[derive(Debug, Clone)]
pub struct Solution {
    pub field: ComplexField,
    pub report: SolveReport,
}

fn element_systems(mesh: &Mesh, data: &ProblemData, method: &StabilizationMethod, parallel: bool) -> Result<Vec<ElementSystem>> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        // ordered collect keeps the reduction below deterministic
        return (0..mesh.n_elements()).into_par_iter().map(|e| element_matrix(mesh, e, data, method)).collect();
    }
    let _ = parallel;
    (0..mesh.n_elements()).map(|e| element_matrix(mesh, e, data, method)).collect()
}

/// Assembles the global system. Element matrices may be computed in
/// parallel; the sum is always formed in element order.
pub fn assemble(mesh: &Mesh, data: &ProblemData, method: &StabilizationMethod) -> Result<AssembledSystem> {
    assemble_with(mesh, data, method, true)
}

/// [`assemble`] with explicit control over threading.
pub fn assemble_with(mesh: &Mesh, data: &ProblemData, method: &StabilizationMethod, parallel: bool) -> Result<AssembledSystem> {
    method.check_admissible(mesh.kind)?;
    data.validate(mesh)?;
    let nn = mesh.n_nodes();
    let mut used = vec![false; nn];
    for el in &mesh.elements {
        for &n in el {
            used[n] = true;
        }
    }
    if let Some(n) = used.iter().position(|u| !u) {
        return Err(Error::Assembly(format!("node {n} belongs to no element")));
    }

    let systems = element_systems(mesh, data, method, parallel)?;
    let mut trip = Vec::with_capacity(systems.len() * 16 * 4);
    let mut load = vec![Cx::new(0.0, 0.0); nn];
    let push = |a: usize, b: usize, k: Cx, t: &mut Vec<(usize, usize, f64)>| {
        t.push((2 * a, 2 * b, k.re));
        t.push((2 * a, 2 * b + 1, -k.im));
        t.push((2 * a + 1, 2 * b, k.im));
        t.push((2 * a + 1, 2 * b + 1, k.re));
    };
    for s in &systems {
        for (a, &na) in s.nodes.iter().enumerate() {
            for (b, &nb) in s.nodes.iter().enumerate() {
                push(na, nb, s.k[a][b], &mut trip);
            }
            load[na] += s.f[a];
        }
    }
    if method.variant.is_rd() {
        add_rd_coupling(mesh, data, method, &mut |a, b, k| push(a, b, k, &mut trip))?;
    }
    for (name, flux) in &data.neumann {
        for face in mesh.boundary_faces(name)? {
            let share = *flux * mesh.face_measure(&face) / face.len() as f64;
            for &n in &face {
                load[n] += share;
            }
        }
    }

    let mut matrix = SparseMatrix::from_triplets(2 * nn, &trip)?;
    let mut rhs: Vec<f64> = load.iter().flat_map(|f| [f.re, f.im]).collect();
    let mut dirichlet = vec![None; nn];
    for (name, value) in &data.dirichlet {
        for &n in mesh.node_set(name)? {
            dirichlet[n] = Some(*value);
        }
    }
    let fixed: Vec<Option<f64>> = dirichlet.iter().flat_map(|d| match d {
        Some(v) => [Some(v.re), Some(v.im)],
        None => [None, None],
    }).collect();
    // lift known values to the right-hand side, then decouple the fixed dofs
    for (i, fi) in fixed.iter().enumerate() {
        let (cols, vals) = matrix.row_mut(i);
        match fi {
            Some(g) => {
                for (c, v) in cols.iter().zip(vals.iter_mut()) {
                    *v = if *c == i { 1.0 } else { 0.0 };
                }
                rhs[i] = *g;
            }
            None => {
                for (c, v) in cols.iter().zip(vals.iter_mut()) {
                    if let Some(g) = fixed[*c] {
                        rhs[i] -= *v * g;
                        *v = 0.0;
                    }
                }
            }
        }
    }
    for (i, fi) in fixed.iter().enumerate() {
        if fi.is_some() && matrix.get_mut(i, i).is_none() {
            return Err(Error::Assembly(format!("dof {i} has no diagonal entry")));
        }
    }
    Ok(AssembledSystem { matrix, rhs, dirichlet })
}

/// Adds the projected-gradient part of the diffusive residual.
fn add_rd_coupling(
    mesh: &Mesh,
    data: &ProblemData,
    method: &StabilizationMethod,
    push: &mut dyn FnMut(usize, usize, Cx),
) -> Result<()> {
    let r = rd_operator(mesh)?;
    let nn = mesh.n_nodes();
    let mut rows = vec![vec![Cx::new(0.0, 0.0); nn]; nn];
    for e in 0..mesh.n_elements() {
        let p = element_params(mesh, e, data, method)?;
        let nodes = &mesh.elements[e];
        let a_x = p.velocity[0];
        for q in element_quadrature(mesh, e, Rule::Standard)? {
            for (ia, &na) in nodes.iter().enumerate() {
                for (ic, &nc) in nodes.iter().enumerate() {
                    let dc = q.grad[ic][0];
                    let mut coef = Cx::new(-p.kappa * p.tau * a_x * q.grad[ia][0] * dc, 0.0);
                    if method.variant == Variant::RdVms {
                        coef += I * p.omega * p.tau * p.kappa * q.n[ia] * dc;
                    }
                    coef *= q.weight;
                    for (b, row) in rows[na].iter_mut().enumerate() {
                        *row += coef * r.at(nc, b);
                    }
                }
            }
        }
    }
    for (a, row) in rows.iter().enumerate() {
        for (b, &k) in row.iter().enumerate() {
            push(a, b, k);
        }
    }
    Ok(())
}

/// Assembles and solves with GMRES.
pub fn solve(mesh: &Mesh, data: &ProblemData, method: &StabilizationMethod, opts: &GmresOptions) -> Result<Solution> {
    solve_with(mesh, data, method, opts, true)
}

/// [`solve`] with explicit control over threaded assembly.
pub fn solve_with(
    mesh: &Mesh,
    data: &ProblemData,
    method: &StabilizationMethod,
    opts: &GmresOptions,
    parallel: bool,
) -> Result<Solution> {
    let sys = assemble_with(mesh, data, method, parallel)?;
    let (x, report) = gmres(&sys.matrix, &sys.rhs, opts)?;
    let mut field = ComplexField::from_interleaved(&x);
    for (n, d) in sys.dirichlet.iter().enumerate() {
        if let Some(v) = d {
            field.set(n, *v);
        }
    }
    Ok(Solution { field, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{structured_quad_2d, uniform_1d};
    use crate::numerics::PhysicalParams;

    #[test]
    fn later_dirichlet_entries_win() {
        let m = structured_quad_2d(2, 2, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new(1.0, [1.0, 0.0, 0.0], 1.0, 1.0))
            .dirichlet("bottom", Cx::new(0.0, 0.0))
            .dirichlet("left", Cx::new(1.0, 0.0));
        let sys = assemble(&m, &data, &StabilizationMethod::new(Variant::Supg)).unwrap();
        assert_eq!(sys.dirichlet[0], Some(Cx::new(1.0, 0.0)));
        assert_eq!(sys.dirichlet[1], Some(Cx::new(0.0, 0.0)));
        assert_eq!(sys.dirichlet[4], None);
    }

    #[test]
    fn structure_is_symmetric_and_dirichlet_rows_are_identity() {
        let m = uniform_1d(5, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new_1d(2.0, 1.0, 0.1, 1.0))
            .dirichlet("left", Cx::new(0.0, 0.0))
            .dirichlet("right", Cx::new(1.0, 0.5));
        let sys = assemble(&m, &data, &StabilizationMethod::new(Variant::Asu)).unwrap();
        let a = &sys.matrix;
        for i in 0..a.n() {
            for &j in a.row(i).0 {
                assert!(a.has_entry(j, i));
            }
        }
        let last = 2 * 5 + 1;
        assert_eq!(a.get(last, last), 1.0);
        assert_eq!(a.get(last, last - 2), 0.0);
        assert_eq!(sys.rhs[last], 0.5);
    }

    #[test]
    fn serial_and_parallel_assembly_match() {
        let m = structured_quad_2d(6, 5, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new(5.0, [3.0, 1.0, 0.0], 0.1, 1.0)).dirichlet("left", Cx::new(1.0, 0.0));
        let meth = StabilizationMethod::for_kind(Variant::Asu, m.kind);
        let a = assemble_with(&m, &data, &meth, true).unwrap();
        let b = assemble_with(&m, &data, &meth, false).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.rhs, b.rhs);
    }

    #[test]
    fn isolated_node_is_rejected() {
        let mut m = uniform_1d(3, 1.0).unwrap();
        m.nodes.push([2.0, 0.0, 0.0]);
        let data = ProblemData::new(PhysicalParams::new_1d(1.0, 1.0, 1.0, 1.0));
        assert!(matches!(assemble(&m, &data, &StabilizationMethod::new(Variant::Galerkin)), Err(Error::Assembly(_))));
    }

    #[test]
    fn overlapping_boundary_kinds_are_rejected() {
        let m = uniform_1d(3, 1.0).unwrap();
        let data = ProblemData::new(PhysicalParams::new_1d(1.0, 1.0, 1.0, 1.0))
            .dirichlet("left", Cx::new(0.0, 0.0))
            .neumann("left", Cx::new(1.0, 0.0));
        assert!(matches!(assemble(&m, &data, &StabilizationMethod::new(Variant::Galerkin)), Err(Error::Config(_))));
    }
}
