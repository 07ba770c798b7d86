use crate::gaussian::{nullifier_variances, GaussianError, GaussianState, NullifierReport};
use crate::lattice::{Bicoloring, PhysAdjacency};

/// Quarter-turn phase-space rotation of every color-1 mode:
/// `+1` sends `q → p, p → −q`; `−1` sends `q → −p, p → q`.
pub fn rotate_color_class(
    state: &GaussianState,
    coloring: &Bicoloring,
    quarter_turns: i32,
) -> Result<GaussianState, GaussianError> {
    if quarter_turns != 1 && quarter_turns != -1 {
        return Err(GaussianError::QuarterTurns(quarter_turns));
    }
    let n = state.n();
    if coloring.len() != n || coloring.colors().iter().any(|&c| c > 1) {
        return Err(GaussianError::InvalidColoring);
    }
    let s = f64::from(quarter_turns);
    let mut cov = state.cov().clone();
    let mut mean = state.mean().clone();
    // Rows then columns: cov → R cov Rᵀ with R acting on (q_k, p_k).
    for k in coloring.class(1) {
        let (q, p) = (k, n + k);
        let negate = if s > 0.0 { p } else { q };
        cov.swap_rows(q, p);
        cov.row_mut(negate).scale_mut(-1.0);
        cov.swap_columns(q, p);
        cov.column_mut(negate).scale_mut(-1.0);
        let (mq, mp) = (mean[q], mean[p]);
        mean[q] = s * mp;
        mean[p] = -s * mq;
    }
    GaussianState::from_parts(mean, cov)
}

/// The phase convention that best matches a target graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseChoice {
    pub quarter_turns: i32,
    /// True when the signed target is `−target`.
    pub negated: bool,
    pub signed_target: PhysAdjacency,
    pub state: GaussianState,
    pub report: NullifierReport,
    /// `(quarter_turns, negated, max variance)` for every candidate, in search order.
    pub candidates: Vec<(i32, bool, f64)>,
}

/// Tries `±1` quarter turns against `±target` and keeps the smallest max
/// nullifier variance. Ties (within `1e-12` relative) keep the earlier
/// candidate, so `(+1, +target)` wins when nothing is better.
pub fn best_phase_convention(
    state: &GaussianState,
    coloring: &Bicoloring,
    target: &PhysAdjacency,
) -> Result<PhaseChoice, GaussianError> {
    let negated_target = target.negated();
    let mut best: Option<PhaseChoice> = None;
    let mut candidates = Vec::with_capacity(4);
    for turns in [1, -1] {
        let rotated = rotate_color_class(state, coloring, turns)?;
        for (negated, t) in [(false, target), (true, &negated_target)] {
            let report = nullifier_variances(&rotated, t)?;
            let max = report.max_variance;
            candidates.push((turns, negated, max));
            let better = best
                .as_ref()
                .is_none_or(|b| max < b.report.max_variance * (1.0 - 1e-12));
            if better {
                best = Some(PhaseChoice {
                    quarter_turns: turns,
                    negated,
                    signed_target: t.clone(),
                    state: rotated.clone(),
                    report,
                    candidates: Vec::new(),
                });
            }
        }
    }
    let mut best = best.expect("four candidates evaluated");
    best.candidates = candidates;
    Ok(best)
}
