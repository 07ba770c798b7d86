use crate::hankel::HankelShorthand;
use crate::lattice::{projector4, BlockWeight, LatticeError, SuperAdjacency};

/// Run lengths `(u, v) = (M−1, M²−2M−3)` of the toroidal shorthand.
pub fn torus_run_lengths(m: usize) -> Result<(usize, usize), LatticeError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(LatticeError::TorusSize(m));
    }
    Ok((m - 1, m * m - 2 * m - 3))
}

/// The 4×4 block-Hankel shorthand of the twisted toroidal lattice on M²
/// macronodes:
///
/// `[0^u, Π¹, 0^v, Π⁰, 0^u, Π³, 0 / Π² / 0^u, Π¹, 0^v, Π⁰, 0^u, −Π³, 0]`
pub fn torus_shorthand(m: usize) -> Result<HankelShorthand, LatticeError> {
    let (u, v) = torus_run_lengths(m)?;
    let p = |j| projector4(j).expect("projector index in range");
    let zero = BlockWeight::zeros(4);
    let half = |last: BlockWeight| {
        let mut h = Vec::with_capacity(2 * u + v + 4);
        h.extend(std::iter::repeat_n(zero.clone(), u));
        h.push(p(1));
        h.extend(std::iter::repeat_n(zero.clone(), v));
        h.push(p(0));
        h.extend(std::iter::repeat_n(zero.clone(), u));
        h.push(last);
        h.push(zero.clone());
        h
    };
    let mut entries = half(p(3));
    entries.push(p(2));
    entries.extend(half(p(3).neg()));
    debug_assert_eq!(entries.len(), 2 * m * m - 1);
    Ok(HankelShorthand::new(4, entries).expect("well-formed torus shorthand"))
}

/// Twisted toroidal supergraph with M² macronodes, built directly from its
/// shorthand: `block(i, j)` is shorthand entry `i + j`.
pub fn build_torus_supergraph(m: usize) -> Result<SuperAdjacency, LatticeError> {
    let shorthand = torus_shorthand(m)?;
    let n = m * m;
    let mut s = SuperAdjacency::empty(n, 4);
    for i in 0..n {
        for j in i + 1..n {
            let block = &shorthand.entries()[i + j];
            if !block.is_zero() {
                s.insert(i, j, block.clone())?;
            }
        }
    }
    Ok(s)
}
