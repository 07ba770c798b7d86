//! Plain-text adjacency formats.
//!
//! Physical triplets: header `n=<count> denom=4`, then `i j k/4` for every
//! nonzero entry with `i ≤ j`. Supergraph triplets: header
//! `n=<count> block_side=<b>`, then `i j payload` with `i < j`.

use std::fmt::Write as _;

use crate::exact::Quarter;
use crate::lattice::{BlockWeight, LatticeError, PhysAdjacency, SuperAdjacency};

pub fn write_phys_triplets(a: &PhysAdjacency) -> String {
    let mut out = format!("n={} denom=4\n", a.n());
    for (i, j, w) in a.pairs() {
        let _ = writeln!(out, "{i} {j} {w}");
    }
    out
}

fn header_fields(line: &str) -> Result<Vec<(&str, usize)>, LatticeError> {
    line.split_whitespace()
        .map(|f| {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| LatticeError::BadTriplets(line.to_string()))?;
            let v = v.parse().map_err(|_| LatticeError::BadTriplets(line.to_string()))?;
            Ok((k, v))
        })
        .collect()
}

fn field(fields: &[(&str, usize)], key: &str) -> Result<usize, LatticeError> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| LatticeError::BadTriplets(format!("missing {key}")))
}

pub fn read_phys_triplets(text: &str) -> Result<PhysAdjacency, LatticeError> {
    let bad = |l: &str| LatticeError::BadTriplets(l.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let fields = header_fields(header)?;
    let n = field(&fields, "n")?;
    if field(&fields, "denom")? != 4 {
        return Err(bad(header));
    }
    let mut pairs = Vec::new();
    for line in lines {
        let parts: Vec<_> = line.split_whitespace().collect();
        let [i, j, w] = parts.as_slice() else {
            return Err(bad(line));
        };
        let i: usize = i.parse().map_err(|_| bad(line))?;
        let j: usize = j.parse().map_err(|_| bad(line))?;
        let w: i32 = w
            .strip_suffix("/4")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(line))?;
        pairs.push((i, j, Quarter(w)));
    }
    PhysAdjacency::from_pairs(n, pairs)
}

/// Undirected DOT graph; edge labels are the quarter weights.
pub fn write_phys_dot(a: &PhysAdjacency) -> String {
    let mut out = String::from("graph lattice {\n  node [shape=circle];\n");
    for i in 0..a.n() {
        let _ = writeln!(out, "  {i};");
    }
    for (i, j, w) in a.pairs() {
        let _ = writeln!(out, "  {i} -- {j} [label=\"{w}\"];");
    }
    out.push_str("}\n");
    out
}

pub fn write_super_triplets(s: &SuperAdjacency) -> String {
    let mut out = format!("n={} block_side={}\n", s.n_macro(), s.block_side());
    for (i, j, b) in s.superedges() {
        let _ = writeln!(out, "{i} {j} {}", b.payload());
    }
    out
}

pub fn read_super_triplets(text: &str) -> Result<SuperAdjacency, LatticeError> {
    let bad = |l: &str| LatticeError::BadTriplets(l.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let fields = header_fields(header)?;
    let n = field(&fields, "n")?;
    let side = field(&fields, "block_side")?;
    let mut s = SuperAdjacency::empty(n, side);
    for line in lines {
        let parts: Vec<_> = line.split_whitespace().collect();
        let [i, j, payload] = parts.as_slice() else {
            return Err(bad(line));
        };
        let i: usize = i.parse().map_err(|_| bad(line))?;
        let j: usize = j.parse().map_err(|_| bad(line))?;
        s.insert(i, j, BlockWeight::parse_payload(payload, side)?)?;
    }
    Ok(s)
}
