//! Gaussian-state simulation of the pair-squeezing dynamics.
//!
//! Conventions: `ħ = 1`, `[q, p] = i`, vacuum covariance `1/2`, quadratures
//! ordered `(q₁…q_n, p₁…p_n)`. The Hamiltonian
//! `H = iκ Σ_{mn} A_mn (a†_m a†_n − a_m a_n)` gives `dq/dt = 2κA q` and
//! `dp/dt = −2κA p`, so after `r = κt` the quadratures transform as
//! `q → e^{2rA} q`, `p → e^{−2rA} p`.

mod effective;
mod evolve;
mod linalg;
mod measure;
mod nullifier;
mod oracle;
mod phase;
mod reduce;
mod state;

pub use effective::{effective_graph, max_entry_error, pure_form_residual, write_effective_graph, EffectiveGraph};
pub use evolve::{evolution_transform, evolve, evolve_dense, EvolutionParams, Symplectic};
pub use linalg::expm;
pub use measure::{ideal_graph_delete, measure_q, measure_q_with_outcomes};
pub use nullifier::{
    nullifier_variances, target_hash, write_nullifier_records, write_nullifier_report, NullifierReport,
};
pub use oracle::{oracle_covariance, oracle_distance};
pub use phase::{best_phase_convention, rotate_color_class, PhaseChoice};
pub use reduce::{cut_nodes, reduce_and_cut_gaussian, reduce_and_cut_ideal, GaussianCutReport, IdealCutReport};
pub use state::{vacuum, GaussianState};

use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaussianError {
    #[error("a Gaussian state needs at least one mode")]
    NoModes,
    #[error("squeezing parameter must be finite and nonnegative, got {0}")]
    BadSqueeze(f64),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("quarter turns must be +1 or -1, got {0}")]
    QuarterTurns(i32),
    #[error("coloring does not match the state's mode count")]
    InvalidColoring,
    #[error("measured node set is empty")]
    EmptyNodeSet,
    #[error("node {index} out of range for {len} modes")]
    NodeOutOfRange { index: usize, len: usize },
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("state is not pure: covariance departs from the pure form by {0}")]
    MixedState(f64),
    #[error("covariance block is not positive definite")]
    NotPositiveDefinite,
    #[error("layer {layer} out of range for block side {block_side}")]
    Layer { layer: usize, block_side: usize },
    #[error("meridian cell ({0}, {1}) outside the {2}x{2} chart")]
    Meridian(usize, usize, usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
