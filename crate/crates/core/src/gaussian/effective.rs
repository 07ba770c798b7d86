use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::decimal::sig12;
use crate::gaussian::linalg::{spd_inverse, symmetrize};
use crate::gaussian::{GaussianError, GaussianState};
use crate::lattice::PhysAdjacency;

/// A pure Gaussian state written as the complex graph `Z = V + iU`:
/// `cov = ½[[U⁻¹, U⁻¹V], [VU⁻¹, U + VU⁻¹V]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveGraph {
    pub v: DMatrix<f64>,
    pub u: DMatrix<f64>,
}

impl EffectiveGraph {
    pub fn covariance(&self) -> Result<DMatrix<f64>, GaussianError> {
        let n = self.v.nrows();
        let u_inv = spd_inverse(&self.u)?;
        let qp = &u_inv * &self.v;
        let pp = &self.u + &self.v * &qp;
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        cov.view_mut((0, 0), (n, n)).copy_from(&u_inv);
        cov.view_mut((0, n), (n, n)).copy_from(&qp);
        cov.view_mut((n, 0), (n, n)).copy_from(&qp.transpose());
        cov.view_mut((n, n), (n, n)).copy_from(&pp);
        Ok(symmetrize(&cov) * 0.5)
    }

    /// Largest entrywise difference between the reconstructed and the given covariance.
    pub fn reconstruction_error(&self, state: &GaussianState) -> Result<f64, GaussianError> {
        Ok((self.covariance()? - state.cov()).amax())
    }

    /// [`Self::reconstruction_error`] over `max(1, max|cov|)`.
    pub fn relative_reconstruction_error(&self, state: &GaussianState) -> Result<f64, GaussianError> {
        Ok(self.reconstruction_error(state)? / state.cov().amax().max(1.0))
    }
}

/// Reads `U` and `V` off the `qq` and `pq` blocks. A pure state is fixed by
/// those blocks, so purity is checked by rebuilding the covariance and
/// comparing, relative to `max(1, max|cov|)`, against `1e-6`. Unlike
/// `det(2·cov)` this stays well conditioned at large squeezing.
pub fn effective_graph(state: &GaussianState) -> Result<EffectiveGraph, GaussianError> {
    let g = extract(state)?;
    let residual = g.relative_reconstruction_error(state)?;
    if residual > 1e-6 {
        return Err(GaussianError::MixedState(residual));
    }
    Ok(g)
}

fn extract(state: &GaussianState) -> Result<EffectiveGraph, GaussianError> {
    let qq_inv = spd_inverse(&state.cov_qq())?;
    let u = qq_inv.clone() * 0.5;
    let v = symmetrize(&(state.cov_pq() * qq_inv));
    Ok(EffectiveGraph { v, u })
}

/// How far the covariance is from the pure state sharing its `qq` and `pq`
/// blocks, relative to `max(1, max|cov|)`. Zero up to rounding for pure states.
pub fn pure_form_residual(state: &GaussianState) -> Result<f64, GaussianError> {
    extract(state)?.relative_reconstruction_error(state)
}

/// `max_ij |V_ij − A_ij|`.
pub fn max_entry_error(v: &DMatrix<f64>, ideal: &PhysAdjacency) -> Result<f64, GaussianError> {
    if v.nrows() != ideal.n() {
        return Err(GaussianError::Dimension {
            expected: ideal.n(),
            found: v.nrows(),
        });
    }
    Ok((v - ideal.to_f64()).amax())
}

/// Dense dump of `V` then `U`, twelve significant digits.
pub fn write_effective_graph(g: &EffectiveGraph) -> String {
    let mut out = format!("n={}\n", g.v.nrows());
    for (name, m) in [("V", &g.v), ("U", &g.u)] {
        let _ = writeln!(out, "{name}");
        for row in m.row_iter() {
            let cells: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{evolve_dense, rotate_color_class, vacuum};
    use crate::lattice::Bicoloring;

    #[test]
    fn vacuum_graph() {
        let g = effective_graph(&vacuum(3).unwrap()).unwrap();
        assert_eq!(g.v, DMatrix::zeros(3, 3));
        assert!((&g.u - DMatrix::identity(3, 3)).amax() < 1e-15);
    }

    #[test]
    fn pair_converges_to_negated_graph() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        for r in [0.3, 1.0, 5.0] {
            let s = rotate_color_class(&evolve_dense(&a, r).unwrap(), &Bicoloring::from_colors(vec![0, 1]), 1).unwrap();
            let g = effective_graph(&s).unwrap();
            let x: f64 = 4.0 * r;
            assert!((g.v[(0, 1)] + x.tanh()).abs() < 1e-9);
            assert!((g.u[(0, 0)] - 1.0 / x.cosh()).abs() < 1e-9);
            assert!(g.relative_reconstruction_error(&s).unwrap() < 1e-9);
        }
    }

    #[test]
    fn mixed_state_rejected() {
        let s = GaussianState::from_parts(nalgebra::DVector::zeros(2), DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(effective_graph(&s), Err(GaussianError::MixedState(_))));
    }
}
