use std::collections::BTreeMap;

use crate::exact::{ExactMatrix, Quarter};
use crate::lattice::{BlockWeight, LatticeError};

/// Macronode-level adjacency with matrix-valued weights.
///
/// Only blocks with `i < j` are stored; `block(j, i)` is the transpose of
/// `block(i, j)`. Diagonal blocks are always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAdjacency {
    n_macro: usize,
    block_side: usize,
    blocks: BTreeMap<(usize, usize), BlockWeight>,
}

impl SuperAdjacency {
    pub fn empty(n_macro: usize, block_side: usize) -> Self {
        SuperAdjacency {
            n_macro,
            block_side,
            blocks: BTreeMap::new(),
        }
    }

    pub fn n_macro(&self) -> usize {
        self.n_macro
    }

    pub fn block_side(&self) -> usize {
        self.block_side
    }

    /// Sets the block between `i` and `j`; `block(j, i)` becomes its transpose.
    pub fn insert(&mut self, i: usize, j: usize, block: BlockWeight) -> Result<(), LatticeError> {
        for idx in [i, j] {
            if idx >= self.n_macro {
                return Err(LatticeError::IndexOutOfRange {
                    index: idx,
                    len: self.n_macro,
                });
            }
        }
        if i == j {
            return Err(LatticeError::SelfLoop(i));
        }
        if block.side() != self.block_side {
            return Err(LatticeError::BlockSide {
                expected: self.block_side,
                found: block.side(),
            });
        }
        let (key, block) = if i < j {
            ((i, j), block)
        } else {
            ((j, i), block.transpose())
        };
        if block.is_zero() {
            self.blocks.remove(&key);
        } else {
            self.blocks.insert(key, block);
        }
        Ok(())
    }

    pub fn block(&self, i: usize, j: usize) -> Option<BlockWeight> {
        if i < j {
            self.blocks.get(&(i, j)).cloned()
        } else {
            self.blocks.get(&(j, i)).map(BlockWeight::transpose)
        }
    }

    /// Stored blocks with `i < j`, in index order.
    pub fn superedges(&self) -> impl Iterator<Item = (usize, usize, &BlockWeight)> {
        self.blocks.iter().map(|(&(i, j), b)| (i, j, b))
    }

    pub fn superedge_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.blocks
            .keys()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }
}

/// Physical-node adjacency: a symmetric sparse matrix of quarter weights.
///
/// Symmetry is enforced at construction. A nonzero diagonal is representable
/// (so degenerate inputs can be checked) and reported by
/// [`PhysAdjacency::has_self_loops`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhysAdjacency {
    rows: Vec<Vec<(usize, Quarter)>>,
}

impl PhysAdjacency {
    pub fn zeros(n: usize) -> Self {
        PhysAdjacency {
            rows: vec![Vec::new(); n],
        }
    }

    /// Builds from `(i, j, w)` triplets, each describing both `(i,j)` and
    /// `(j,i)`. Repeated pairs must agree.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = (usize, usize, Quarter)>,
    {
        let mut map: BTreeMap<(usize, usize), Quarter> = BTreeMap::new();
        for (i, j, w) in pairs {
            for idx in [i, j] {
                if idx >= n {
                    return Err(LatticeError::IndexOutOfRange { index: idx, len: n });
                }
            }
            let key = (i.min(j), i.max(j));
            if let Some(prev) = map.insert(key, w) {
                if prev != w {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let mut rows = vec![Vec::new(); n];
        for ((i, j), w) in map {
            if w.is_zero() {
                continue;
            }
            rows[i].push((j, w));
            if i != j {
                rows[j].push((i, w));
            }
        }
        for r in &mut rows {
            r.sort_unstable_by_key(|&(j, _)| j);
        }
        Ok(PhysAdjacency { rows })
    }

    /// Builds from a dense matrix, rejecting asymmetric input.
    pub fn from_dense(m: &ExactMatrix) -> Result<Self, LatticeError> {
        let n = m.side();
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let pairs = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let w = m.get(i, j);
            (!w.is_zero()).then_some((i, j, w))
        });
        Self::from_pairs(n, pairs)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n());
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m.set(i, j, w);
            }
        }
        m
    }

    /// Dense `f64` copy, row-major.
    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.n();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                m[(i, j)] = w.to_f64();
            }
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, Quarter)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Quarter {
        self.rows[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|p| self.rows[i][p].1)
            .unwrap_or(Quarter::ZERO)
    }

    pub fn has_self_loops(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .any(|(i, r)| r.iter().any(|&(j, _)| j == i))
    }

    /// Unordered nonzero pairs `i <= j`, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Quarter)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().filter(move |&&(j, _)| j >= i).map(move |&(j, w)| (i, j, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.pairs().filter(|&(i, j, _)| i != j).count()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].iter().filter(|&&(j, _)| j != i).count()
    }

    pub fn negated(&self) -> Self {
        PhysAdjacency {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&(j, w)| (j, -w)).collect())
                .collect(),
        }
    }

    /// Squared row norm of row `i`, in sixteenths.
    pub fn row_norm_sixteenths(&self, i: usize) -> i64 {
        self.rows[i].iter().map(|&(_, w)| w.mul_sixteenths(w)).sum()
    }

    /// Relabels nodes: old node `a` becomes `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n, "permutation length");
        let mut rows = vec![Vec::new(); n];
        for (a, row) in self.rows.iter().enumerate() {
            rows[perm[a]] = row.iter().map(|&(b, w)| (perm[b], w)).collect();
        }
        for r in &mut rows {
            r.sort_unstable_by_key(|&(j, _)| j);
        }
        PhysAdjacency { rows }
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let rows = keep
            .iter()
            .map(|&old| {
                self.rows[old]
                    .iter()
                    .filter(|&&(j, _)| index[j] != usize::MAX)
                    .map(|&(j, w)| (index[j], w))
                    .collect::<Vec<_>>()
            })
            .map(|mut r| {
                r.sort_unstable_by_key(|&(j, _)| j);
                r
            })
            .collect();
        PhysAdjacency { rows }
    }
}

impl crate::exact::QuarterMatrix for PhysAdjacency {
    fn side(&self) -> usize {
        self.n()
    }

    fn entry(&self, i: usize, j: usize) -> Quarter {
        self.get(i, j)
    }
}

/// Expands a supergraph to its physical nodes: node `(i, a)` gets index
/// `i·block_side + a` and the weight between `(i,a)` and `(j,b)` is
/// `block(i,j)[a,b]`.
pub fn expand(s: &SuperAdjacency) -> PhysAdjacency {
    let b = s.block_side();
    let n = s.n_macro() * b;
    let mut rows = vec![Vec::new(); n];
    for (i, j, block) in s.superedges() {
        for a in 0..b {
            for c in 0..b {
                let w = block.get(a, c);
                if !w.is_zero() {
                    rows[i * b + a].push((j * b + c, w));
                    rows[j * b + c].push((i * b + a, w));
                }
            }
        }
    }
    for r in &mut rows {
        r.sort_unstable_by_key(|&(j, _)| j);
    }
    PhysAdjacency { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{projector2, PiSign};

    #[test]
    fn empty_supergraph_expands_to_zero() {
        let a = expand(&SuperAdjacency::empty(3, 4));
        assert_eq!(a.n(), 12);
        assert_eq!(a.edge_count(), 0);
    }

    #[test]
    fn insert_rejects_self_loops_and_bad_sides() {
        let mut s = SuperAdjacency::empty(2, 2);
        assert_eq!(s.insert(1, 1, projector2(PiSign::Plus)), Err(LatticeError::SelfLoop(1)));
        assert!(matches!(
            s.insert(0, 1, BlockWeight::identity(4)),
            Err(LatticeError::BlockSide { .. })
        ));
    }

    #[test]
    fn reverse_block_is_transpose() {
        let mut s = SuperAdjacency::empty(2, 2);
        let b = BlockWeight::from_numerators(2, &[1, 2, 3, 4]).unwrap();
        s.insert(1, 0, b.clone()).unwrap();
        assert_eq!(s.block(1, 0).unwrap(), b);
        assert_eq!(s.block(0, 1).unwrap(), b.transpose());
        let a = expand(&s);
        assert_eq!(a.get(2, 1), Quarter(2));
        assert_eq!(a.get(1, 2), Quarter(2));
    }

    #[test]
    fn conflicting_pairs_are_asymmetric() {
        let r = PhysAdjacency::from_pairs(2, [(0, 1, Quarter(1)), (1, 0, Quarter(2))]);
        assert_eq!(r, Err(LatticeError::NotSymmetric(1, 0)));
    }

    #[test]
    fn dense_round_trip_and_asymmetry() {
        let mut m = ExactMatrix::zeros(3);
        m.set(0, 2, Quarter(3));
        m.set(2, 0, Quarter(3));
        let a = PhysAdjacency::from_dense(&m).unwrap();
        assert_eq!(a.to_dense(), m);
        m.set(0, 1, Quarter(1));
        assert!(PhysAdjacency::from_dense(&m).is_err());
    }
}
