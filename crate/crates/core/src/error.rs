use thiserror::Error;

use crate::gaussian::GaussianError;
use crate::hankel::HankelError;
use crate::lattice::LatticeError;

/// Any failure of the library, tagged by the module that raised it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("hankel: {0}")]
    Hankel(#[from] HankelError),
    #[error("gaussian: {0}")]
    Gaussian(#[from] GaussianError),
}
