use crate::lattice::{projector2, LatticeError, PiSign, SuperAdjacency};

/// Ring supergraph on `n_macro` macronodes whose edges alternate π⁺ and π⁻.
/// Edge `(k, k+1)` carries π⁺ for even `k` and π⁻ for odd `k`.
pub fn build_ring_supergraph(n_macro: usize) -> Result<SuperAdjacency, LatticeError> {
    if n_macro < 4 || !n_macro.is_multiple_of(2) {
        return Err(LatticeError::RingSize(n_macro));
    }
    let mut s = SuperAdjacency::empty(n_macro, 2);
    for k in 0..n_macro {
        let sign = if k % 2 == 0 { PiSign::Plus } else { PiSign::Minus };
        s.insert(k, (k + 1) % n_macro, projector2(sign))?;
    }
    Ok(s)
}
