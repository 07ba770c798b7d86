//! Matrix-weighted cluster-state graphs: projector weights, the twisted
//! toroidal supergraph, the ring/crown example, physical-node expansion and
//! the exact structural checks that go with them.

mod checks;
mod coords;
mod export;
mod graph;
mod renumber;
mod ring;
mod torus;
mod weights;

pub use checks::{
    bicoloring, check_orthogonal, check_orthogonal_with, two_path_weight, Bicoloring, OrthogonalityReport,
};
pub use coords::{coordinates, MacronodeCoords, Step, AXIS_HORIZONTAL, AXIS_VERTICAL};
pub use export::{read_phys_triplets, read_super_triplets, write_phys_dot, write_phys_triplets, write_super_triplets};
pub use graph::{expand, PhysAdjacency, SuperAdjacency};
pub use renumber::{
    check_renumber_size, published_layout_positions, renumber_to_block_hankel, tensor_factor_permutation, Permutation,
    RenumberReport, Renumbered,
};
pub use ring::build_ring_supergraph;
pub use torus::{build_torus_supergraph, torus_run_lengths, torus_shorthand};
pub use weights::{projector2, projector4, projector_factors, BlockWeight, PiSign};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("projector index {0} out of range 0..4")]
    ProjectorIndex(usize),
    #[error("block of side {side} cannot hold {len} entries")]
    BadBlock { side: usize, len: usize },
    #[error("lattice size M={0} must be even and at least 4")]
    TorusSize(usize),
    #[error("block-Hankel renumbering needs even M >= 6 (t = M^2-4M-3 = {t} < 0 at M={m})")]
    RenumberSize { m: usize, t: i64 },
    #[error("ring size {0} must be even and at least 4")]
    RingSize(usize),
    #[error("degenerate graph: {0}")]
    Degenerate(&'static str),
    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("self-loop block at macronode {0}")]
    SelfLoop(usize),
    #[error("block side {found} does not match supergraph block side {expected}")]
    BlockSide { expected: usize, found: usize },
    #[error("adjacency is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("graph is not bipartite: odd cycle through edge ({0}, {1})")]
    NotBipartite(usize, usize),
    #[error("input is not the expanded M={0} torus lattice")]
    NotTorusLattice(usize),
    #[error("renumbered matrix is not 2x2 block-Hankel")]
    RenumberFailed,
    #[error("unrecognised block payload `{0}`")]
    BadPayload(String),
    #[error("malformed triplet file: {0}")]
    BadTriplets(String),
}
