use nalgebra::DMatrix;

use crate::gaussian::linalg::{expm, max_abs};
use crate::gaussian::{vacuum, GaussianError, GaussianState};
use crate::lattice::PhysAdjacency;

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionParams {
    /// `r = κt`.
    pub squeeze_r: f64,
    pub adjacency: PhysAdjacency,
}

/// A transform `q → Q q`, `p → P p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Symplectic {
    pub q_block: DMatrix<f64>,
    pub p_block: DMatrix<f64>,
}

impl Symplectic {
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.q_block.nrows();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        s.view_mut((0, 0), (n, n)).copy_from(&self.q_block);
        s.view_mut((n, n), (n, n)).copy_from(&self.p_block);
        s
    }

    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState, GaussianError> {
        let n = self.q_block.nrows();
        if state.n() != n {
            return Err(GaussianError::Dimension {
                expected: n,
                found: state.n(),
            });
        }
        let s = self.matrix();
        let cov = &s * state.cov() * s.transpose();
        GaussianState::from_parts(&s * state.mean(), (&cov + cov.transpose()) * 0.5)
    }
}

fn check_r(r: f64) -> Result<(), GaussianError> {
    if !r.is_finite() || r < 0.0 {
        return Err(GaussianError::BadSqueeze(r));
    }
    Ok(())
}

/// The Heisenberg-picture transform after squeezing `r`. Orthogonal `A`
/// (`A² = 1`) takes the closed form `cosh(2r) ± sinh(2r)·A`; anything else
/// goes through the matrix exponential.
pub fn evolution_transform(a: &DMatrix<f64>, r: f64) -> Result<Symplectic, GaussianError> {
    check_r(r)?;
    let n = a.nrows();
    if !a.is_square() {
        return Err(GaussianError::Dimension {
            expected: n,
            found: a.ncols(),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            if a[(i, j)] != a[(j, i)] {
                return Err(GaussianError::Asymmetric(i, j));
            }
        }
    }
    let id = DMatrix::identity(n, n);
    let (q_block, p_block) = if n > 0 && is_orthogonal(a) {
        let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        (&id * c + a * s, &id * c - a * s)
    } else {
        (expm(&(a * (2.0 * r))), expm(&(a * (-2.0 * r))))
    };
    Ok(Symplectic { q_block, p_block })
}

/// Vacuum evolved under an arbitrary symmetric real adjacency.
///
/// For orthogonal `A` the covariance blocks are written down directly,
/// `(cosh 4r ± sinh 4r·A)/2`, which rounds each entry once instead of
/// accumulating the error of `S·S^T`.
pub fn evolve_dense(a: &DMatrix<f64>, r: f64) -> Result<GaussianState, GaussianError> {
    let t = evolution_transform(a, r)?;
    let n = a.nrows();
    if n > 0 && is_orthogonal(a) {
        let (c, s) = ((4.0 * r).cosh() / 2.0, (4.0 * r).sinh() / 2.0);
        let id = DMatrix::<f64>::identity(n, n);
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        cov.view_mut((0, 0), (n, n)).copy_from(&(&id * c + a * s));
        cov.view_mut((n, n), (n, n)).copy_from(&(&id * c - a * s));
        return GaussianState::from_parts(nalgebra::DVector::zeros(2 * n), cov);
    }
    t.apply(&vacuum(n)?)
}

fn is_orthogonal(a: &DMatrix<f64>) -> bool {
    let id = DMatrix::identity(a.nrows(), a.nrows());
    max_abs(&(a * a - &id)) == 0.0
}

pub fn evolve(params: &EvolutionParams) -> Result<GaussianState, GaussianError> {
    check_r(params.squeeze_r)?;
    let a = &params.adjacency;
    if a.n() == 0 {
        return Err(GaussianError::NoModes);
    }
    evolve_dense(&a.to_f64(), params.squeeze_r)
}
