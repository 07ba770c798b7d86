//! Regrouping the expanded torus lattice into 2×2 block-Hankel form.
//!
//! Every label is a tensor product `Π = π^s ⊗ π^t`, and physical layer `a`
//! of a macronode splits as `a = 2α + β` over the two factors. Sending node
//! `(i, α, β)` to `2(i + α·N) + β` makes the first factor select one of two
//! copies of the macronode chain, each copy carrying a 2×2 `π^t` block. The
//! resulting matrix is block-Hankel at 2×2 granularity with 15 nonzero
//! shorthand entries, each `±½π^±`.

use num_rational::Rational64;

use crate::hankel::{shorthand_of, HankelShorthand};
use crate::lattice::{build_torus_supergraph, expand, LatticeError, PhysAdjacency, PiSign};

/// π-pattern of the seven entries in each half of the published layout,
/// followed by the corner.
const PRINTED_TYPES: [PiSign; 8] = {
    use PiSign::*;
    [Minus, Plus, Plus, Minus, Minus, Plus, Minus, Plus]
};

/// A relabeling of physical nodes: old node `a` becomes `forward[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    /// Returns `None` unless `forward` is a bijection on `0..len`.
    pub fn from_vec(forward: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; forward.len()];
        for &f in &forward {
            if f >= forward.len() || std::mem::replace(&mut seen[f], true) {
                return None;
            }
        }
        Some(Permutation { forward })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.forward.len()];
        for (a, &b) in self.forward.iter().enumerate() {
            inv[b] = a;
        }
        Permutation { forward: inv }
    }

    /// `P·A·Pᵀ`.
    pub fn apply(&self, a: &PhysAdjacency) -> PhysAdjacency {
        a.permuted(&self.forward)
    }
}

/// Where the renumbered shorthand puts its nonzero blocks, compared with the
/// published run lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenumberReport {
    pub m: usize,
    /// `(2M−1, M²−4M−3)`.
    pub printed_run_lengths: (i64, i64),
    /// Leading zero run and the gap after the first block, read off the result.
    pub observed_run_lengths: (usize, usize),
    pub nonzero_positions: Vec<usize>,
    pub printed_positions: Vec<usize>,
    pub matches_printed_positions: bool,
    /// The observed positions follow the same run-length layout with the
    /// observed `(s, t)`.
    pub matches_layout_shape: bool,
    pub all_pi_proportional: bool,
    /// π-pattern per nonzero position, `None` where the block is not `c·π^±`.
    pub patterns: Vec<Option<PiSign>>,
    pub matches_printed_patterns: bool,
    /// Common coefficient `c` of the blocks `±c·π^±`, if uniform.
    pub block_scalar: Option<Rational64>,
    pub negative_positions: Vec<usize>,
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renumbered {
    pub permutation: Permutation,
    pub matrix: PhysAdjacency,
    pub shorthand: HankelShorthand,
    pub report: RenumberReport,
}

/// Nonzero shorthand positions of the published 2×2 layout for run lengths
/// `(s, t)`: seven per half plus the corner at `4s + 2t + 9`.
pub fn published_layout_positions(s: usize, t: usize) -> Vec<usize> {
    let half = [
        s,
        s + t + 1,
        2 * s + t + 2,
        2 * s + t + 4,
        3 * s + t + 5,
        3 * s + 2 * t + 6,
        4 * s + 2 * t + 7,
    ];
    let corner = 4 * s + 2 * t + 9;
    let mut out = half.to_vec();
    out.push(corner);
    out.extend(half.iter().map(|p| p + corner + 1));
    out
}

/// Size precondition of [`renumber_to_block_hankel`]: even `M >= 6`.
pub fn check_renumber_size(m: usize) -> Result<(), LatticeError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(LatticeError::TorusSize(m));
    }
    let t = (m * m) as i64 - 4 * m as i64 - 3;
    if t < 0 {
        return Err(LatticeError::RenumberSize { m, t });
    }
    Ok(())
}

/// The tensor-factor relabeling for the M-lattice.
pub fn tensor_factor_permutation(m: usize) -> Permutation {
    let n = m * m;
    let forward = (0..4 * n)
        .map(|p| {
            let (i, layer) = (p / 4, p % 4);
            let (alpha, beta) = (layer / 2, layer % 2);
            2 * (i + alpha * n) + beta
        })
        .collect();
    Permutation { forward }
}

pub fn renumber_to_block_hankel(a: &PhysAdjacency, m: usize) -> Result<Renumbered, LatticeError> {
    check_renumber_size(m)?;
    if *a != expand(&build_torus_supergraph(m)?) {
        return Err(LatticeError::NotTorusLattice(m));
    }
    let permutation = tensor_factor_permutation(m);
    let matrix = permutation.apply(a);
    let shorthand = shorthand_of(&matrix, 2).map_err(|_| LatticeError::RenumberFailed)?;
    let report = report(m, &shorthand);
    Ok(Renumbered {
        permutation,
        matrix,
        shorthand,
        report,
    })
}

fn report(m: usize, shorthand: &HankelShorthand) -> RenumberReport {
    let printed = (2 * m as i64 - 1, (m * m) as i64 - 4 * m as i64 - 3);
    let printed_positions = published_layout_positions(printed.0 as usize, printed.1 as usize);
    let nonzero_positions = shorthand.nonzero_positions();
    let observed = match nonzero_positions.as_slice() {
        [a, b, ..] => (*a, b - a - 1),
        _ => (0, 0),
    };
    let multiples: Vec<_> = nonzero_positions
        .iter()
        .map(|&k| shorthand.entries()[k].as_pi_multiple())
        .collect();
    let patterns: Vec<_> = multiples.iter().map(|x| x.map(|(p, _)| p)).collect();
    let all_pi_proportional = patterns.iter().all(Option::is_some);
    let printed_patterns: Vec<_> = PRINTED_TYPES[..7]
        .iter()
        .chain([&PRINTED_TYPES[7]])
        .chain(&PRINTED_TYPES[..7])
        .map(|&p| Some(p))
        .collect();
    let magnitudes: Vec<_> = multiples.iter().flatten().map(|(_, c)| c.abs()).collect();
    let block_scalar = match magnitudes.split_first() {
        Some((first, rest)) if rest.iter().all(|c| c == first) && all_pi_proportional => Some(first.to_ratio()),
        _ => None,
    };
    let negative_positions = nonzero_positions
        .iter()
        .zip(&multiples)
        .filter(|(_, x)| x.is_some_and(|(_, c)| c.0 < 0))
        .map(|(&k, _)| k)
        .collect();

    let matches_printed_positions = nonzero_positions == printed_positions;
    let matches_layout_shape = nonzero_positions == published_layout_positions(observed.0, observed.1);
    let matches_printed_patterns = patterns == printed_patterns;
    let mut discrepancies = Vec::new();
    if !matches_printed_positions {
        discrepancies.push(format!(
            "run lengths (s,t)=({},{}) observed, ({},{}) printed",
            observed.0, observed.1, printed.0, printed.1
        ));
    }
    if !matches_printed_patterns {
        let spell = |p: &Option<PiSign>| match p {
            Some(PiSign::Plus) => "+",
            Some(PiSign::Minus) => "-",
            None => "?",
        };
        discrepancies.push(format!(
            "pi patterns {} observed, {} printed",
            patterns.iter().map(spell).collect::<String>(),
            printed_patterns.iter().map(spell).collect::<String>()
        ));
    }
    if block_scalar != Some(Rational64::new(1, 2)) {
        discrepancies.push(format!("block scalar {block_scalar:?}, expected 1/2"));
    }
    RenumberReport {
        m,
        printed_run_lengths: printed,
        observed_run_lengths: observed,
        nonzero_positions,
        printed_positions,
        matches_printed_positions,
        matches_layout_shape,
        all_pi_proportional,
        patterns,
        matches_printed_patterns,
        block_scalar,
        negative_positions,
        discrepancies,
    }
}
