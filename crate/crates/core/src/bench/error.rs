use crate::error::{Error, Result};
use crate::mesh::{element_quadrature, Mesh, Rule};
use crate::numerics::{ComplexField, Cx};

/// Reference values at every quadrature point of a mesh, element by element.
///
/// Sampling once lets several fields on the same mesh share the cost of an
/// expensive oracle.
#[derive(Debug, Clone)]
pub struct ReferenceSamples {
    pub rule: Rule,
    pub values: Vec<Cx>,
}

/// Evaluates `oracle` at the quadrature points of `rule`.
pub fn sample_oracle(mesh: &Mesh, oracle: &(dyn Fn([f64; 3]) -> Cx + Sync), rule: Rule) -> Result<ReferenceSamples> {
    let per_element = |e: usize| -> Result<Vec<Cx>> {
        Ok(element_quadrature(mesh, e, rule)?.iter().map(|q| oracle(q.x)).collect())
    };
    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<Cx>> = {
        use rayon::prelude::*;
        (0..mesh.n_elements()).into_par_iter().map(per_element).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<Cx>> = (0..mesh.n_elements()).map(per_element).collect::<Result<_>>()?;
    Ok(ReferenceSamples { rule, values: chunks.concat() })
}

/// Samples the nodal interpolant of `oracle` instead of the oracle itself.
///
/// A field that matches the reference at every node then has zero error, so
/// the resulting norm measures nodal accuracy alone.
pub fn sample_interpolant(mesh: &Mesh, oracle: &(dyn Fn([f64; 3]) -> Cx + Sync), rule: Rule) -> Result<ReferenceSamples> {
    let nodal: Vec<Cx> = mesh.nodes.iter().map(|x| oracle(*x)).collect();
    let mut values = vec![];
    for e in 0..mesh.n_elements() {
        let nodes = &mesh.elements[e];
        for q in element_quadrature(mesh, e, rule)? {
            values.push(nodes.iter().zip(&q.n).map(|(&n, na)| nodal[n] * *na).sum());
        }
    }
    Ok(ReferenceSamples { rule, values })
}

/// [`l2_error`] against pre-sampled reference values.
pub fn l2_error_sampled(mesh: &Mesh, field: &ComplexField, samples: &ReferenceSamples) -> Result<(f64, f64)> {
    if field.len() != mesh.n_nodes() {
        return Err(Error::Config("field length does not match the mesh".into()));
    }
    let (mut err, mut norm) = (0.0, 0.0);
    let mut k = 0;
    for e in 0..mesh.n_elements() {
        let nodes = &mesh.elements[e];
        for q in element_quadrature(mesh, e, samples.rule)? {
            let uh: Cx = nodes.iter().zip(&q.n).map(|(&n, na)| field.get(n) * *na).sum();
            let u = *samples.values.get(k).ok_or_else(|| Error::Config("too few reference samples".into()))?;
            k += 1;
            err += (uh - u).norm_sqr() * q.weight;
            norm += u.norm_sqr() * q.weight;
        }
    }
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let sq = err / norm;
    Ok((sq, sq.sqrt()))
}

/// Relative L2 error of an interpolated nodal field against a pointwise
/// reference. Returns `(‖φʰ - φ‖² / ‖φ‖², ‖φʰ - φ‖ / ‖φ‖)`.
pub fn l2_error(mesh: &Mesh, field: &ComplexField, oracle: &(dyn Fn([f64; 3]) -> Cx + Sync), rule: Rule) -> Result<(f64, f64)> {
    l2_error_sampled(mesh, field, &sample_oracle(mesh, oracle, rule)?)
}
