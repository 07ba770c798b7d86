use nalgebra::DMatrix;

use crate::gaussian::GaussianError;

/// Matrix exponential by scaling and squaring with a Taylor core.
///
/// `X` is scaled by `2^-s` until its 1-norm is at most 1/2, the series is
/// summed until a term drops below `1e-12` of machine precision relative to
/// the partial sum, and the result is squared `s` times.
pub fn expm(x: &DMatrix<f64>) -> DMatrix<f64> {
    assert!(x.is_square(), "expm of a non-square matrix");
    let n = x.nrows();
    let norm = one_norm(x);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = x * 2f64.powi(-s);
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..64 {
        term = &term * &scaled / k as f64;
        sum += &term;
        if one_norm(&term) <= 1e-12 * f64::EPSILON * one_norm(&sum) {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

fn one_norm(x: &DMatrix<f64>) -> f64 {
    x.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub(crate) fn spd_inverse(x: &DMatrix<f64>) -> Result<DMatrix<f64>, GaussianError> {
    let inv = x
        .clone()
        .cholesky()
        .ok_or(GaussianError::NotPositiveDefinite)?
        .inverse();
    Ok((&inv + inv.transpose()) * 0.5)
}

pub(crate) fn symmetrize(x: &DMatrix<f64>) -> DMatrix<f64> {
    (x + x.transpose()) * 0.5
}

pub(crate) fn max_abs(x: &DMatrix<f64>) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}
