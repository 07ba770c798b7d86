use nalgebra::{DMatrix, DVector};

use crate::gaussian::GaussianError;

/// Mean and covariance over `(q₁…q_n, p₁…p_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianState {
    pub(crate) n: usize,
    pub(crate) mean: DVector<f64>,
    pub(crate) cov: DMatrix<f64>,
}

pub fn vacuum(n: usize) -> Result<GaussianState, GaussianError> {
    if n == 0 {
        return Err(GaussianError::NoModes);
    }
    Ok(GaussianState {
        n,
        mean: DVector::zeros(2 * n),
        cov: DMatrix::identity(2 * n, 2 * n) * 0.5,
    })
}

impl GaussianState {
    pub fn from_parts(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self, GaussianError> {
        let dim = cov.nrows();
        if cov.ncols() != dim || !dim.is_multiple_of(2) {
            return Err(GaussianError::Dimension {
                expected: dim,
                found: cov.ncols(),
            });
        }
        if mean.len() != dim {
            return Err(GaussianError::Dimension {
                expected: dim,
                found: mean.len(),
            });
        }
        Ok(GaussianState { n: dim / 2, mean, cov })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn cov_qq(&self) -> DMatrix<f64> {
        self.cov.view((0, 0), (self.n, self.n)).into_owned()
    }

    pub fn cov_pp(&self) -> DMatrix<f64> {
        self.cov.view((self.n, self.n), (self.n, self.n)).into_owned()
    }

    /// `Cov(p_i, q_j)`.
    pub fn cov_pq(&self) -> DMatrix<f64> {
        self.cov.view((self.n, 0), (self.n, self.n)).into_owned()
    }

    /// `det(2·cov)`, which is 1 for a pure state. The empty state gives 1.
    pub fn purity_det(&self) -> f64 {
        if self.n == 0 {
            return 1.0;
        }
        match (&self.cov * 2.0).cholesky() {
            Some(c) => {
                let log: f64 = c.l_dirty().diagonal().iter().map(|d| d.ln()).sum();
                (2.0 * log).exp()
            }
            None => 0.0,
        }
    }

    /// Symplectic eigenvalues, ascending. All are `≥ 1/2` exactly when the
    /// uncertainty relation `cov + iΩ/2 ≥ 0` holds.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        let eig = self.cov.clone().symmetric_eigen();
        let root = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(|x| x.max(0.0).sqrt()))
            * eig.eigenvectors.transpose();
        let omega = symplectic_form(n);
        // eigenvalues of √σ Ωᵀ σ Ω √σ are ν², each twice
        let m = &root * omega.transpose() * &self.cov * &omega * &root;
        let m = (&m + m.transpose()) * 0.5;
        let mut nu: Vec<f64> = m
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|x| x.max(0.0).sqrt())
            .collect();
        nu.sort_by(f64::total_cmp);
        nu.into_iter().step_by(2).collect()
    }

    pub fn satisfies_uncertainty(&self, tol: f64) -> bool {
        self.symplectic_eigenvalues().iter().all(|&v| v >= 0.5 - tol)
    }
}

/// `Ω = [[0, 1], [−1, 0]]` in the `(q…, p…)` ordering.
pub(crate) fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        o[(i, n + i)] = 1.0;
        o[(n + i, i)] = -1.0;
    }
    o
}
