use std::collections::VecDeque;

use num_rational::Rational64;

use crate::exact::{sixteenths, DENOM};
use crate::lattice::{LatticeError, PhysAdjacency};
use crate::par::{map_range, Execution};

/// Outcome of the exact `A² = 1` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub is_orthogonal: bool,
    /// Largest `|(A²)_jk − δ_jk|`.
    pub worst_deviation: Rational64,
    /// First pair attaining the worst deviation, when it is nonzero.
    pub witness_pair: Option<(usize, usize)>,
    /// Diagonal weights were present; such a matrix is not a simple graph.
    pub has_self_loops: bool,
}

/// Exact check of `Σ_l A_jl A_lk = δ_jk` over all pairs.
pub fn check_orthogonal(a: &PhysAdjacency) -> OrthogonalityReport {
    check_orthogonal_with(a, Execution::default())
}

pub fn check_orthogonal_with(a: &PhysAdjacency, exec: Execution) -> OrthogonalityReport {
    let n = a.n();
    let one = i64::from(DENOM * DENOM);
    // Per row: (worst deviation in sixteenths, column of first occurrence).
    let per_row = map_range(exec, n, |j| {
        let mut acc = vec![0i64; n];
        for &(l, w_jl) in a.row(j) {
            for &(k, w_lk) in a.row(l) {
                acc[k] += w_jl.mul_sixteenths(w_lk);
            }
        }
        let mut best = (0i64, 0usize);
        for (k, &v) in acc.iter().enumerate() {
            let dev = (v - if k == j { one } else { 0 }).abs();
            if dev > best.0 {
                best = (dev, k);
            }
        }
        best
    });
    let mut worst = (0i64, None);
    for (j, &(dev, k)) in per_row.iter().enumerate() {
        if dev > worst.0 {
            worst = (dev, Some((j, k)));
        }
    }
    OrthogonalityReport {
        is_orthogonal: worst.0 == 0,
        worst_deviation: sixteenths(worst.0),
        witness_pair: worst.1,
        has_self_loops: a.has_self_loops(),
    }
}

/// Summed weight of all 2-paths from `j` to `k`, i.e. `(A²)_jk`.
pub fn two_path_weight(a: &PhysAdjacency, j: usize, k: usize) -> Result<Rational64, LatticeError> {
    let n = a.n();
    for idx in [j, k] {
        if idx >= n {
            return Err(LatticeError::IndexOutOfRange { index: idx, len: n });
        }
    }
    let s: i64 = a.row(j).iter().map(|&(l, w_jl)| w_jl.mul_sixteenths(a.get(l, k))).sum();
    Ok(sixteenths(s))
}

/// Two-coloring of the support graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicoloring {
    colors: Vec<u8>,
}

impl Bicoloring {
    pub fn from_colors(colors: Vec<u8>) -> Self {
        Bicoloring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, i: usize) -> u8 {
        self.colors[i]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Nodes of the given color, ascending.
    pub fn class(&self, color: u8) -> Vec<usize> {
        (0..self.colors.len()).filter(|&i| self.colors[i] == color).collect()
    }

    /// True when every edge of `a` joins different colors.
    pub fn is_valid_for(&self, a: &PhysAdjacency) -> bool {
        self.colors.len() == a.n()
            && self.colors.iter().all(|&c| c <= 1)
            && a.pairs().all(|(i, j, _)| self.colors[i] != self.colors[j])
    }

    /// Restriction to the listed nodes, in order.
    pub fn restricted(&self, keep: &[usize]) -> Bicoloring {
        Bicoloring {
            colors: keep.iter().map(|&i| self.colors[i]).collect(),
        }
    }
}

/// Breadth-first two-coloring; each component starts with color 0 at its
/// smallest node.
pub fn bicoloring(a: &PhysAdjacency) -> Result<Bicoloring, LatticeError> {
    let n = a.n();
    let mut colors = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if colors[start] != u8::MAX {
            continue;
        }
        colors[start] = 0;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            for &(j, _) in a.row(i) {
                if colors[j] == u8::MAX {
                    colors[j] = 1 - colors[i];
                    queue.push_back(j);
                } else if colors[j] == colors[i] {
                    return Err(LatticeError::NotBipartite(i.min(j), i.max(j)));
                }
            }
        }
    }
    Ok(Bicoloring { colors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Quarter;

    fn cycle(n: usize, w: Quarter) -> PhysAdjacency {
        PhysAdjacency::from_pairs(n, (0..n).map(|i| (i, (i + 1) % n, w))).unwrap()
    }

    #[test]
    fn identity_is_orthogonal_but_flagged() {
        let id = PhysAdjacency::from_pairs(3, (0..3).map(|i| (i, i, Quarter::ONE))).unwrap();
        let r = check_orthogonal(&id);
        assert!(r.is_orthogonal);
        assert!(r.has_self_loops);
    }

    #[test]
    fn unweighted_square_is_not_orthogonal() {
        let a = cycle(4, Quarter::ONE);
        let r = check_orthogonal(&a);
        assert!(!r.is_orthogonal);
        // (A²)_jj = 2 (deviation 1); opposite corners also get 2 (deviation 2).
        assert_eq!(r.worst_deviation, Rational64::from_integer(2));
        assert_eq!(r.witness_pair, Some((0, 2)));
        assert_eq!(two_path_weight(&a, 0, 0).unwrap(), Rational64::from_integer(2));
    }

    #[test]
    fn single_two_path_on_square_torus() {
        // 4x4 unweighted torus: nodes at distance (1,1) share exactly two
        // 2-paths, nodes at distance (2,0) share one.
        let m = 4;
        let idx = |x: usize, y: usize| (y % m) * m + (x % m);
        let pairs = (0..m).flat_map(|y| {
            (0..m).flat_map(move |x| {
                [
                    (idx(x, y), idx(x + 1, y), Quarter::ONE),
                    (idx(x, y), idx(x, y + 1), Quarter::ONE),
                ]
            })
        });
        let a = PhysAdjacency::from_pairs(m * m, pairs).unwrap();
        let straight = two_path_weight(&a, idx(0, 0), idx(2, 0)).unwrap();
        assert_eq!(straight, Rational64::from_integer(2)); // wraps: both sides at M=4
        let m = 6;
        let idx = |x: usize, y: usize| (y % m) * m + (x % m);
        let pairs = (0..m).flat_map(|y| {
            (0..m).flat_map(move |x| {
                [
                    (idx(x, y), idx(x + 1, y), Quarter::ONE),
                    (idx(x, y), idx(x, y + 1), Quarter::ONE),
                ]
            })
        });
        let a = PhysAdjacency::from_pairs(m * m, pairs).unwrap();
        assert_eq!(
            two_path_weight(&a, idx(0, 0), idx(2, 0)).unwrap(),
            Rational64::from_integer(1)
        );
    }

    #[test]
    fn two_path_index_checked() {
        assert!(two_path_weight(&cycle(4, Quarter::ONE), 0, 9).is_err());
    }

    #[test]
    fn even_ring_alternates_and_triangle_fails() {
        let c = bicoloring(&cycle(6, Quarter(1))).unwrap();
        assert_eq!(c.colors(), &[0, 1, 0, 1, 0, 1]);
        assert!(matches!(
            bicoloring(&cycle(3, Quarter(1))),
            Err(LatticeError::NotBipartite(..))
        ));
    }

    #[test]
    fn sequential_and_default_agree() {
        let a = cycle(10, Quarter(2));
        assert_eq!(check_orthogonal_with(&a, Execution::Sequential), check_orthogonal(&a));
    }
}
