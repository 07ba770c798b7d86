//! Reference solution of the covariance equation of motion by direct
//! numerical integration, sharing no code with the closed-form transform.

use nalgebra::DMatrix;

/// `max|Δ| / max(1, max|b|)`.
pub fn oracle_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let diff = a.iter().zip(b.iter()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let scale = b.iter().fold(1.0f64, |m, y| m.max(y.abs()));
    diff / scale
}

/// Integrates `dσ/dt = Gσ + σGᵀ`, `G = diag(2A, −2A)`, from `σ(0) = 1/2`
/// to `t = r` with classical RK4, halving the step until two successive
/// results agree to `tol` under [`oracle_distance`].
pub fn oracle_covariance(a: &DMatrix<f64>, r: f64, tol: f64) -> DMatrix<f64> {
    let n = a.nrows();
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = 2.0 * a[(i, j)];
            g[(n + i, n + j)] = -2.0 * a[(i, j)];
        }
    }
    let rhs = |s: &DMatrix<f64>| {
        let gs = &g * s;
        &gs + gs.transpose()
    };
    let integrate = |steps: usize| {
        let h = r / steps as f64;
        let mut s = DMatrix::identity(2 * n, 2 * n) * 0.5;
        for _ in 0..steps {
            let k1 = rhs(&s);
            let k2 = rhs(&(&s + &k1 * (h / 2.0)));
            let k3 = rhs(&(&s + &k2 * (h / 2.0)));
            let k4 = rhs(&(&s + &k3 * h));
            s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        }
        s
    };
    let mut steps = 32;
    let mut prev = integrate(steps);
    loop {
        steps *= 2;
        let next = integrate(steps);
        // RK4 error shrinks ~16x per halving; the finer result is well inside `tol`.
        if oracle_distance(&prev, &next) < tol || steps >= 1 << 20 {
            return next;
        }
        prev = next;
    }
}
