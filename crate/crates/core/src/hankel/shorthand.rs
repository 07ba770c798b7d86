use std::fmt::Write as _;

use crate::exact::{ExactMatrix, QuarterMatrix};
use crate::hankel::HankelError;
use crate::lattice::BlockWeight;

/// A (block-)Hankel matrix written as its top row followed by its right
/// column. Entry `k` is the common block on the skew-diagonal `I + J = k`;
/// the top-right block sits at `corner_index = N − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelShorthand {
    block_side: usize,
    entries: Vec<BlockWeight>,
}

impl HankelShorthand {
    pub fn new(block_side: usize, entries: Vec<BlockWeight>) -> Result<Self, HankelError> {
        if ![1, 2, 4].contains(&block_side) {
            return Err(HankelError::UnsupportedBlockSide(block_side));
        }
        if entries.len().is_multiple_of(2) {
            return Err(HankelError::BadLength(entries.len()));
        }
        if let Some((index, e)) = entries.iter().enumerate().find(|(_, e)| e.side() != block_side) {
            return Err(HankelError::MixedBlockSide {
                index,
                expected: block_side,
                found: e.side(),
            });
        }
        Ok(HankelShorthand { block_side, entries })
    }

    pub fn block_side(&self) -> usize {
        self.block_side
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix side in block units.
    pub fn n_blocks(&self) -> usize {
        self.entries.len().div_ceil(2)
    }

    pub fn corner_index(&self) -> usize {
        self.n_blocks() - 1
    }

    pub fn entries(&self) -> &[BlockWeight] {
        &self.entries
    }

    pub fn nonzero_positions(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&k| !self.entries[k].is_zero())
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }
}

/// Certifies that every block skew-diagonal of `a` is constant and returns
/// the shorthand. On failure, reports the top-row/right-column block and the
/// first block that disagrees with it.
pub fn shorthand_of<M: QuarterMatrix>(a: &M, block_side: usize) -> Result<HankelShorthand, HankelError> {
    if ![1, 2, 4].contains(&block_side) {
        return Err(HankelError::UnsupportedBlockSide(block_side));
    }
    let side = a.side();
    if side == 0 || !side.is_multiple_of(block_side) {
        return Err(HankelError::BlockSide { side, block_side });
    }
    let b = block_side;
    let n = side / b;
    let representative = |k: usize| if k < n { (0, k) } else { (k + 1 - n, n - 1) };
    let same = |(i0, j0): (usize, usize), (i1, j1): (usize, usize)| {
        (0..b).all(|x| (0..b).all(|y| a.entry(i0 * b + x, j0 * b + y) == a.entry(i1 * b + x, j1 * b + y)))
    };
    for i in 1..n {
        for j in 0..n {
            let rep = representative(i + j);
            if rep != (i, j) && !same(rep, (i, j)) {
                return Err(HankelError::NotHankel {
                    first: rep,
                    second: (i, j),
                });
            }
        }
    }
    let entries = (0..2 * n - 1)
        .map(|k| {
            let (i, j) = representative(k);
            let nums: Vec<i32> = (0..b)
                .flat_map(|x| (0..b).map(move |y| (x, y)))
                .map(|(x, y)| a.entry(i * b + x, j * b + y).0)
                .collect();
            BlockWeight::from_numerators(b, &nums)
        })
        .collect::<Result<Vec<_>, _>>()?;
    HankelShorthand::new(b, entries)
}

/// Rebuilds the full matrix: block `(I, J)` is entry `I + J`.
pub fn matrix_of(s: &HankelShorthand) -> ExactMatrix {
    let b = s.block_side();
    let n = s.n_blocks();
    let mut m = ExactMatrix::zeros(n * b);
    for i in 0..n {
        for j in 0..n {
            let block = &s.entries()[i + j];
            if block.is_zero() {
                continue;
            }
            for x in 0..b {
                for y in 0..b {
                    m.set(i * b + x, j * b + y, block.get(x, y));
                }
            }
        }
    }
    m
}

/// Header `length=… corner_index=… block_side=…`, then `k payload` for every
/// nonzero entry in ascending `k`.
pub fn write_shorthand(s: &HankelShorthand) -> String {
    let mut out = format!(
        "length={} corner_index={} block_side={}\n",
        s.len(),
        s.corner_index(),
        s.block_side()
    );
    for k in s.nonzero_positions() {
        let _ = writeln!(out, "{k} {}", s.entries()[k].payload());
    }
    out
}

pub fn parse_shorthand(text: &str) -> Result<HankelShorthand, HankelError> {
    let bad = |m: &str| HankelError::BadShorthandFile(m.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let mut len = None;
    let mut side = None;
    let mut corner = None;
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| bad(header))?;
        let value: usize = value.parse().map_err(|_| bad(header))?;
        match key {
            "length" => len = Some(value),
            "block_side" => side = Some(value),
            "corner_index" => corner = Some(value),
            _ => return Err(bad(header)),
        }
    }
    let (len, side) = (
        len.ok_or_else(|| bad("missing length"))?,
        side.ok_or_else(|| bad("missing block_side"))?,
    );
    let mut entries = vec![BlockWeight::zeros(side); len];
    for line in lines {
        let (k, payload) = line.trim().split_once(' ').ok_or_else(|| bad(line))?;
        let k: usize = k.parse().map_err(|_| bad(line))?;
        let slot = entries.get_mut(k).ok_or_else(|| bad(line))?;
        *slot = BlockWeight::parse_payload(payload.trim(), side)?;
    }
    let s = HankelShorthand::new(side, entries)?;
    if corner.is_some_and(|c| c != s.corner_index()) {
        return Err(bad("corner_index does not match length"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Quarter;
    use crate::lattice::{projector2, PiSign};

    #[test]
    fn zero_matrix_gives_zero_shorthand() {
        let s = shorthand_of(&ExactMatrix::zeros(6), 2).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.corner_index(), 2);
        assert_eq!(s.nonzero_count(), 0);
    }

    #[test]
    fn scalar_shorthand_layout() {
        // [0, a, 0 / b / 0, a, 0]
        let a = BlockWeight::scalar(Quarter(1));
        let b = BlockWeight::scalar(Quarter(-2));
        let z = BlockWeight::zeros(1);
        let s = HankelShorthand::new(1, vec![z.clone(), a.clone(), z.clone(), b, z.clone(), a, z]).unwrap();
        let m = matrix_of(&s);
        assert_eq!(m.side(), 4);
        assert_eq!(m.get(0, 1), Quarter(1));
        assert_eq!(m.get(1, 0), Quarter(1));
        assert_eq!(m.get(0, 3), Quarter(-2));
        assert_eq!(m.get(2, 1), Quarter(-2));
        assert_eq!(m.get(3, 2), Quarter(1));
        assert_eq!(m.nonzero_count(), 2 + 4 + 2);
        assert_eq!(shorthand_of(&m, 1).unwrap(), s);
    }

    #[test]
    fn even_length_rejected() {
        let z = BlockWeight::zeros(2);
        assert_eq!(
            HankelShorthand::new(2, vec![z.clone(), z]).unwrap_err(),
            HankelError::BadLength(2)
        );
    }

    #[test]
    fn violation_reports_first_pair() {
        let mut m = ExactMatrix::zeros(3);
        m.set(0, 2, Quarter(1));
        assert_eq!(
            shorthand_of(&m, 1).unwrap_err(),
            HankelError::NotHankel {
                first: (0, 2),
                second: (1, 1)
            }
        );
        m.set(1, 1, Quarter(1));
        m.set(2, 0, Quarter(1));
        assert!(shorthand_of(&m, 1).is_ok());
        m.set(2, 0, Quarter(3));
        assert_eq!(
            shorthand_of(&m, 1).unwrap_err(),
            HankelError::NotHankel {
                first: (0, 2),
                second: (2, 0)
            }
        );
    }

    #[test]
    fn file_round_trip() {
        let p = projector2(PiSign::Minus).scaled(-1, 2).unwrap();
        let z = BlockWeight::zeros(2);
        let s = HankelShorthand::new(2, vec![z.clone(), p, z]).unwrap();
        let text = write_shorthand(&s);
        assert_eq!(text, "length=3 corner_index=1 block_side=2\n1 -pi-/2\n");
        assert_eq!(parse_shorthand(&text).unwrap(), s);
    }
}
