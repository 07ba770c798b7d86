//! Matrix-valued edge weights.

use std::fmt;

use crate::exact::{Quarter, DENOM};
use crate::lattice::LatticeError;

/// A small square block of quarter weights used as a matrix-valued edge
/// weight between macronodes. Side 1 is allowed so that scalar Hankel
/// shorthands share the same representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockWeight {
    side: usize,
    entries: Vec<Quarter>,
}

/// Sign selector for the 2×2 projectors π⁺ and π⁻.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PiSign {
    Plus,
    Minus,
}

impl PiSign {
    pub fn as_i32(self) -> i32 {
        match self {
            PiSign::Plus => 1,
            PiSign::Minus => -1,
        }
    }
}

impl BlockWeight {
    pub fn zeros(side: usize) -> Self {
        BlockWeight {
            side,
            entries: vec![Quarter::ZERO; side * side],
        }
    }

    /// Builds a block from row-major numerators over 4.
    pub fn from_numerators(side: usize, numerators: &[i32]) -> Result<Self, LatticeError> {
        if !matches!(side, 1 | 2 | 4) || numerators.len() != side * side {
            return Err(LatticeError::BadBlock {
                side,
                len: numerators.len(),
            });
        }
        Ok(BlockWeight {
            side,
            entries: numerators.iter().copied().map(Quarter).collect(),
        })
    }

    pub fn scalar(w: Quarter) -> Self {
        BlockWeight {
            side: 1,
            entries: vec![w],
        }
    }

    pub fn identity(side: usize) -> Self {
        let mut b = Self::zeros(side);
        for i in 0..side {
            b.entries[i * side + i] = Quarter::ONE;
        }
        b
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Quarter {
        self.entries[a * self.side + b]
    }

    pub fn entries(&self) -> &[Quarter] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|w| w.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.side).all(|a| (0..self.side).all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.side);
        for a in 0..self.side {
            for b in 0..self.side {
                t.entries[b * self.side + a] = self.get(a, b);
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        BlockWeight {
            side: self.side,
            entries: self.entries.iter().map(|&w| -w).collect(),
        }
    }

    /// Multiplies every entry by `num/den`, if the result stays on quarters.
    pub fn scaled(&self, num: i32, den: i32) -> Option<Self> {
        let entries = self
            .entries
            .iter()
            .map(|w| {
                let n = w.0 * num;
                (n % den == 0).then_some(Quarter(n / den))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BlockWeight {
            side: self.side,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.side, other.side, "block sides differ");
        BlockWeight {
            side: self.side,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// Exact matrix product. `None` if a product entry is not a multiple of 1/4.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.side, other.side, "block sides differ");
        let n = self.side;
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let s: i64 = (0..n).map(|k| self.get(a, k).mul_sixteenths(other.get(k, b))).sum();
                // sixteenths -> quarters
                if s % i64::from(DENOM) != 0 {
                    return None;
                }
                out.push(Quarter(i32::try_from(s / i64::from(DENOM)).ok()?));
            }
        }
        Some(BlockWeight { side: n, entries: out })
    }

    /// Exact Kronecker product, `(self ⊗ other)[p·i+k, p·j+l] = self[i,j]·other[k,l]`.
    pub fn kron(&self, other: &Self) -> Option<Self> {
        let (n, p) = (self.side, other.side);
        let side = n * p;
        let mut entries = vec![Quarter::ZERO; side * side];
        for i in 0..n {
            for j in 0..n {
                for k in 0..p {
                    for l in 0..p {
                        let s = self.get(i, j).mul_sixteenths(other.get(k, l));
                        if s % i64::from(DENOM) != 0 {
                            return None;
                        }
                        entries[(p * i + k) * side + (p * j + l)] = Quarter(i32::try_from(s / i64::from(DENOM)).ok()?);
                    }
                }
            }
        }
        Some(BlockWeight { side, entries })
    }

    /// Reads a 2×2 block as `c·π^±`, returning the pattern and the exact
    /// coefficient `c` in quarters.
    pub fn as_pi_multiple(&self) -> Option<(PiSign, Quarter)> {
        if self.side != 2 || self.is_zero() {
            return None;
        }
        let (d0, d1, o0, o1) = (self.get(0, 0), self.get(1, 1), self.get(0, 1), self.get(1, 0));
        if d0 != d1 || o0 != o1 {
            return None;
        }
        // π^± has diagonal 1/2, so c = 2·diag.
        let c = Quarter(2 * d0.0);
        if o0 == d0 {
            Some((PiSign::Plus, c))
        } else if o0 == -d0 {
            Some((PiSign::Minus, c))
        } else {
            None
        }
    }

    /// Which projector `±Π^j` this block is, if any.
    pub fn projector_label(&self) -> Option<(usize, i32)> {
        if self.side != 4 {
            return None;
        }
        (0..4).find_map(|j| {
            let p = projector4(j).ok()?;
            if *self == p {
                Some((j, 1))
            } else if *self == p.neg() {
                Some((j, -1))
            } else {
                None
            }
        })
    }

    /// Payload name used by the triplet exports.
    pub fn payload(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if let Some((j, s)) = self.projector_label() {
            return if s > 0 { format!("P{j}") } else { format!("-P{j}") };
        }
        if let Some((pi, c)) = self.as_pi_multiple() {
            let name = match pi {
                PiSign::Plus => "pi+",
                PiSign::Minus => "pi-",
            };
            let sign = if c.0 < 0 { "-" } else { "" };
            return match c.0.abs() {
                4 => format!("{sign}{name}"),
                2 => format!("{sign}{name}/2"),
                k => format!("{sign}{name}*{k}/4"),
            };
        }
        let body = (0..self.side)
            .map(|a| {
                (0..self.side)
                    .map(|b| self.get(a, b).0.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";");
        format!("[{body}]/4")
    }

    /// Inverse of [`BlockWeight::payload`]. `side` is needed for the zero block.
    pub fn parse_payload(text: &str, side: usize) -> Result<Self, LatticeError> {
        let bad = || LatticeError::BadPayload(text.to_string());
        if text == "0" {
            return Ok(Self::zeros(side));
        }
        if let Some(body) = text.strip_prefix('[') {
            let body = body.strip_suffix("]/4").ok_or_else(bad)?;
            let nums = body
                .split(';')
                .flat_map(|row| row.split(','))
                .map(|s| s.trim().parse::<i32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            let side = (nums.len() as f64).sqrt() as usize;
            return Self::from_numerators(side, &nums);
        }
        let (neg, rest) = match text.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, text),
        };
        let block = if let Some(j) = rest.strip_prefix('P') {
            let j: usize = j.parse().map_err(|_| bad())?;
            projector4(j)?
        } else {
            let (pi, scale) = if let Some(s) = rest.strip_prefix("pi+") {
                (PiSign::Plus, s)
            } else if let Some(s) = rest.strip_prefix("pi-") {
                (PiSign::Minus, s)
            } else {
                return Err(bad());
            };
            let base = projector2(pi);
            match scale {
                "" => base,
                "/2" => base.scaled(1, 2).ok_or_else(bad)?,
                s => {
                    let k: i32 = s
                        .strip_prefix('*')
                        .and_then(|s| s.strip_suffix("/4"))
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(bad)?;
                    base.scaled(k, 4).ok_or_else(bad)?
                }
            }
        };
        Ok(if neg { block.neg() } else { block })
    }
}

impl fmt::Display for BlockWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.payload())
    }
}

/// The four mutually orthogonal rank-one projectors on R⁴, entries ±1/4.
pub fn projector4(j: usize) -> Result<BlockWeight, LatticeError> {
    const SIGNS: [[i32; 16]; 4] = [
        [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        [1, -1, 1, -1, -1, 1, -1, 1, 1, -1, 1, -1, -1, 1, -1, 1],
        [1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1, 1, -1, -1, 1, 1],
        [1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1, 1, -1, -1, 1],
    ];
    let signs = SIGNS.get(j).ok_or(LatticeError::ProjectorIndex(j))?;
    BlockWeight::from_numerators(4, signs)
}

/// π⁺ = ½[[1,1],[1,1]] and π⁻ = ½[[1,−1],[−1,1]].
pub fn projector2(sign: PiSign) -> BlockWeight {
    let s = 2 * sign.as_i32();
    BlockWeight {
        side: 2,
        entries: [2, s, s, 2].into_iter().map(Quarter).collect(),
    }
}

/// The tensor factors `(s, t)` with `Π^j = π^s ⊗ π^t`.
pub fn projector_factors(j: usize) -> Option<(PiSign, PiSign)> {
    use PiSign::*;
    match j {
        0 => Some((Plus, Plus)),
        1 => Some((Plus, Minus)),
        2 => Some((Minus, Plus)),
        3 => Some((Minus, Minus)),
        _ => None,
    }
}
