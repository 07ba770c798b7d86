use nalgebra::DVector;

use crate::gaussian::linalg::{spd_inverse, symmetrize};
use crate::gaussian::{GaussianError, GaussianState};
use crate::lattice::PhysAdjacency;

fn complement(n: usize, nodes: &[usize], allow_empty: bool) -> Result<Vec<usize>, GaussianError> {
    if nodes.is_empty() && !allow_empty {
        return Err(GaussianError::EmptyNodeSet);
    }
    let mut listed = vec![false; n];
    for &i in nodes {
        if i >= n {
            return Err(GaussianError::NodeOutOfRange { index: i, len: n });
        }
        if std::mem::replace(&mut listed[i], true) {
            return Err(GaussianError::DuplicateNode(i));
        }
    }
    Ok((0..n).filter(|&i| !listed[i]).collect())
}

/// Ideal homodyne measurement of `q` on `nodes`, all outcomes zero.
pub fn measure_q(state: &GaussianState, nodes: &[usize]) -> Result<GaussianState, GaussianError> {
    measure_q_with_outcomes(state, nodes, None)
}

/// Conditions on `q_b = outcome_b` for every listed node and discards those
/// modes. The covariance of the rest is the Schur complement and does not
/// depend on the outcomes; `outcomes[k]` belongs to `nodes[k]`.
pub fn measure_q_with_outcomes(
    state: &GaussianState,
    nodes: &[usize],
    outcomes: Option<&[f64]>,
) -> Result<GaussianState, GaussianError> {
    let n = state.n();
    let kept = complement(n, nodes, false)?;
    if let Some(o) = outcomes {
        if o.len() != nodes.len() {
            return Err(GaussianError::Dimension {
                expected: nodes.len(),
                found: o.len(),
            });
        }
    }
    let a_idx: Vec<usize> = kept.iter().copied().chain(kept.iter().map(|&k| n + k)).collect();
    let cov = state.cov();
    let s_aa = cov.select_rows(&a_idx).select_columns(&a_idx);
    let s_ay = cov.select_rows(&a_idx).select_columns(nodes);
    let s_yy = cov.select_rows(nodes).select_columns(nodes);
    let gain = &s_ay * spd_inverse(&s_yy)?;
    let new_cov = symmetrize(&(s_aa - &gain * s_ay.transpose()));
    let mean = state.mean();
    let mu_a = DVector::from_iterator(a_idx.len(), a_idx.iter().map(|&i| mean[i]));
    let residual = DVector::from_iterator(
        nodes.len(),
        nodes
            .iter()
            .enumerate()
            .map(|(k, &b)| outcomes.map_or(0.0, |o| o[k]) - mean[b]),
    );
    let new_mean = mu_a + gain * residual;
    GaussianState::from_parts(new_mean, new_cov)
}

/// Removes the listed nodes: what an ideal `q` measurement does to the graph.
pub fn ideal_graph_delete(a: &PhysAdjacency, nodes: &[usize]) -> Result<PhysAdjacency, GaussianError> {
    let kept = complement(a.n(), nodes, true)?;
    Ok(a.induced(&kept))
}
