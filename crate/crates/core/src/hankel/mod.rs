//! Block-Hankel structure: the corner-marked shorthand, pump compilation
//! and the lattice scaling table.

mod pump;
mod scaling;
mod shorthand;

pub use pump::{
    compile_pump, coupled_pairs, parse_pump_file, write_pump_file, Polarization, PumpLine, PumpSpectrum, YPhase,
    SIGN_CONVENTION,
};
pub use scaling::{scaling_report, scaling_report_with, write_scaling_table, ScalingRow};
pub use shorthand::{matrix_of, parse_shorthand, shorthand_of, write_shorthand, HankelShorthand};

use thiserror::Error;

use crate::lattice::LatticeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HankelError {
    #[error("not block-Hankel: block {first:?} differs from block {second:?} on the same skew-diagonal")]
    NotHankel {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("shorthand length {0} is not 2N-1 for any N >= 1")]
    BadLength(usize),
    #[error("matrix side {side} is not a multiple of block side {block_side}")]
    BlockSide { side: usize, block_side: usize },
    #[error("unsupported block side {0}")]
    UnsupportedBlockSide(usize),
    #[error("shorthand entry {index} has block side {found}, expected {expected}")]
    MixedBlockSide {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("pump compilation needs 2x2 blocks, got {0}x{0}")]
    PumpBlockSide(usize),
    #[error("shorthand entry {0} is not proportional to pi+ or pi-")]
    NotCompilable(usize),
    #[error("scaling report needs even M >= 6, got {0}")]
    ScalingSize(usize),
    #[error("malformed pump file: {0}")]
    BadPumpFile(String),
    #[error("malformed shorthand file: {0}")]
    BadShorthandFile(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
