use std::fmt::Write as _;

use crate::hankel::{compile_pump, HankelError};
use crate::lattice::{build_torus_supergraph, expand, renumber_to_block_hankel};
use crate::par::{map_slice, Execution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingRow {
    pub m: usize,
    pub n_macro: usize,
    pub physical_modes: usize,
    pub superedges: usize,
    /// Nonzero off-diagonal entry pairs of the physical adjacency.
    pub physical_edges: usize,
    pub pump_lines: usize,
    /// Spread of pump skew indices, in comb spacings.
    pub bandwidth_span: usize,
}

pub fn scaling_report(ms: &[usize]) -> Result<Vec<ScalingRow>, HankelError> {
    scaling_report_with(ms, Execution::default())
}

/// One row per lattice size, each built from scratch and compiled to a pump
/// spectrum. Rows keep the order of `ms`.
pub fn scaling_report_with(ms: &[usize], exec: Execution) -> Result<Vec<ScalingRow>, HankelError> {
    if let Some(&m) = ms.iter().find(|&&m| m < 6 || m % 2 != 0) {
        return Err(HankelError::ScalingSize(m));
    }
    map_slice(exec, ms, |&m| row(m)).into_iter().collect()
}

fn row(m: usize) -> Result<ScalingRow, HankelError> {
    let s = build_torus_supergraph(m)?;
    let a = expand(&s);
    let r = renumber_to_block_hankel(&a, m)?;
    let pump = compile_pump(&r.shorthand)?;
    Ok(ScalingRow {
        m,
        n_macro: s.n_macro(),
        physical_modes: a.n(),
        superedges: s.superedge_count(),
        physical_edges: a.edge_count(),
        pump_lines: pump.line_count(),
        bandwidth_span: pump.bandwidth_span(),
    })
}

pub fn write_scaling_table(rows: &[ScalingRow]) -> String {
    let mut out = String::from("M N physical_modes superedges physical_edges pump_lines bandwidth_span\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {}",
            r.m, r.n_macro, r.physical_modes, r.superedges, r.physical_edges, r.pump_lines, r.bandwidth_span
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_at_six_and_eight() {
        let rows = scaling_report(&[6, 8]).unwrap();
        assert_eq!(rows[0].physical_edges, 1152);
        assert_eq!(rows[0].pump_lines, 15);
        assert_eq!(rows[1].pump_lines, 15);
        for r in &rows {
            assert_eq!(r.physical_modes, 4 * r.m * r.m);
            assert_eq!(r.superedges, 2 * r.m * r.m);
            assert_eq!(r.physical_edges, 32 * r.m * r.m);
            assert_eq!(r.bandwidth_span, 4 * r.m * r.m - r.m - 2);
        }
    }

    #[test]
    fn rejects_small_or_odd() {
        assert_eq!(scaling_report(&[6, 4]).unwrap_err(), HankelError::ScalingSize(4));
        assert_eq!(scaling_report(&[7]).unwrap_err(), HankelError::ScalingSize(7));
    }

    #[test]
    fn sequential_matches_default() {
        assert_eq!(
            scaling_report_with(&[6, 8], Execution::Sequential).unwrap(),
            scaling_report(&[6, 8]).unwrap()
        );
    }
}
