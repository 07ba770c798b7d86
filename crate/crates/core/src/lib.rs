//! Orthogonal block-Hankel continuous-variable cluster-state lattices.
//!
//! * [`lattice`] builds the matrix-weighted graphs and checks them exactly.
//! * [`hankel`] certifies block-Hankel structure and compiles pump spectra.
//! * [`gaussian`] simulates the squeezing dynamics and the measurements that
//!   reduce the lattice.
//! * [`verify`] runs the end-to-end acceptance checks.

pub mod decimal;
mod error;
pub mod exact;
pub mod gaussian;
pub mod hankel;
pub mod lattice;
pub mod par;
pub mod verify;

pub use error::Error;
