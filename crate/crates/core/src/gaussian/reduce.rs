//! Cutting the torus open: keep one physical layer, then measure the
//! macronodes on one horizontal and one vertical meridian.

use std::collections::{BTreeMap, VecDeque};

use crate::exact::Quarter;
use crate::gaussian::{
    effective_graph, ideal_graph_delete, max_entry_error, measure_q, nullifier_variances, GaussianError, GaussianState,
    NullifierReport,
};
use crate::lattice::{build_torus_supergraph, coordinates, expand, PhysAdjacency, Step};

/// Node sets for one cut, in physical indices of the M-lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPlan {
    pub horizontal_meridian: Vec<usize>,
    pub vertical_meridian: Vec<usize>,
    /// Macronodes on both meridians, ascending.
    pub shared: Vec<usize>,
    /// Physical nodes outside the kept layer, ascending.
    pub other_layers: Vec<usize>,
    /// Macronodes on either meridian, ascending.
    pub cut_macronodes: Vec<usize>,
    /// Remaining macronodes, ascending.
    pub kept_macronodes: Vec<usize>,
}

pub fn cut_nodes(m: usize, keep_layer: usize, meridians: (usize, usize)) -> Result<CutPlan, GaussianError> {
    let coords = coordinates(m)?;
    if keep_layer >= 4 {
        return Err(GaussianError::Layer {
            layer: keep_layer,
            block_side: 4,
        });
    }
    let (x0, y0) = meridians;
    if x0 >= m || y0 >= m {
        return Err(GaussianError::Meridian(x0, y0, m));
    }
    let n = m * m;
    let horizontal = coords.horizontal_meridian(x0, y0);
    let vertical = coords.vertical_meridian(x0, y0);
    let mut on_cut = vec![0u8; n];
    for &i in &horizontal {
        on_cut[i] |= 1;
    }
    for &i in &vertical {
        on_cut[i] |= 2;
    }
    Ok(CutPlan {
        shared: (0..n).filter(|&i| on_cut[i] == 3).collect(),
        other_layers: (0..4 * n).filter(|p| p % 4 != keep_layer).collect(),
        cut_macronodes: (0..n).filter(|&i| on_cut[i] != 0).collect(),
        kept_macronodes: (0..n).filter(|&i| on_cut[i] == 0).collect(),
        horizontal_meridian: horizontal,
        vertical_meridian: vertical,
    })
}

/// Structure of the graph left by the ideal (node-deleting) cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCutReport {
    pub m: usize,
    pub keep_layer: usize,
    pub plan: CutPlan,
    /// Remaining graph, node `k` being macronode `plan.kept_macronodes[k]`.
    pub graph: PhysAdjacency,
    pub node_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    /// `degree → node count`.
    pub degree_census: BTreeMap<usize, usize>,
    pub components: usize,
    /// `E − V + components`.
    pub cycle_rank: usize,
    pub square_faces: usize,
    /// `V − E + squares`; 1 for a square-tiled disk.
    pub euler_characteristic: i64,
    pub positive_edges: usize,
    pub negative_edges: usize,
    /// Common `|weight|` of every remaining edge.
    pub uniform_magnitude: Option<Quarter>,
    /// Cycle lengths of straight horizontal and vertical lines on the torus.
    pub axis_cycles: (Vec<usize>, Vec<usize>),
    pub convention: String,
}

fn components(a: &PhysAdjacency) -> usize {
    let n = a.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in a.row(u) {
                if !std::mem::replace(&mut seen[v], true) {
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

/// 4-cycles, each counted once: every pair of opposite corners shares two
/// neighbors, and each square has two such pairs.
fn square_count(a: &PhysAdjacency) -> usize {
    let n = a.n();
    let mut pairs = 0;
    for u in 0..n {
        let mut common = BTreeMap::new();
        for &(v, _) in a.row(u) {
            for &(w, _) in a.row(v) {
                if w > u {
                    *common.entry(w).or_insert(0usize) += 1;
                }
            }
        }
        pairs += common.values().map(|&c| c * (c.saturating_sub(1)) / 2).sum::<usize>();
    }
    pairs / 2
}

pub fn reduce_and_cut_ideal(
    m: usize,
    keep_layer: usize,
    meridians: (usize, usize),
) -> Result<IdealCutReport, GaussianError> {
    let plan = cut_nodes(m, keep_layer, meridians)?;
    let full = expand(&build_torus_supergraph(m)?);
    let layer = ideal_graph_delete(&full, &plan.other_layers)?;
    let graph = ideal_graph_delete(&layer, &plan.cut_macronodes)?;

    let n = graph.n();
    let mut degree_census = BTreeMap::new();
    for i in 0..n {
        *degree_census.entry(graph.degree(i)).or_insert(0) += 1;
    }
    let edges: Vec<_> = graph.pairs().collect();
    let comps = components(&graph);
    let squares = square_count(&graph);
    let magnitudes: Vec<Quarter> = edges.iter().map(|&(_, _, w)| w.abs()).collect();
    let uniform_magnitude = match magnitudes.split_first() {
        Some((f, rest)) if rest.iter().all(|x| x == f) => Some(*f),
        _ => None,
    };
    let coords = coordinates(m)?;
    Ok(IdealCutReport {
        m,
        keep_layer,
        node_count: n,
        edge_count: edges.len(),
        max_degree: degree_census.keys().next_back().copied().unwrap_or(0),
        degree_census,
        components: comps,
        cycle_rank: edges.len() + comps - n,
        square_faces: squares,
        euler_characteristic: n as i64 - edges.len() as i64 + squares as i64,
        positive_edges: edges.iter().filter(|e| e.2 .0 > 0).count(),
        negative_edges: edges.iter().filter(|e| e.2 .0 < 0).count(),
        uniform_magnitude,
        axis_cycles: (
            coords.axis_cycle_lengths(Step::Right),
            coords.axis_cycle_lengths(Step::Up),
        ),
        convention: coords.convention(),
        plan,
        graph,
    })
}

/// Residuals of the measured lattice against the ideal graphs, before and
/// after the meridian cut.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianCutReport {
    /// After measuring the other layers only.
    pub pre_cut: NullifierReport,
    pub post_cut: NullifierReport,
    /// `max|V − A_ideal|` of the effective graph at each stage.
    pub pre_cut_graph_error: f64,
    pub post_cut_graph_error: f64,
    pub state: GaussianState,
}

/// `state` is the full 4M²-mode lattice state and `signed_target` the
/// adjacency its nullifiers are measured against.
pub fn reduce_and_cut_gaussian(
    state: &GaussianState,
    signed_target: &PhysAdjacency,
    m: usize,
    keep_layer: usize,
    meridians: (usize, usize),
) -> Result<GaussianCutReport, GaussianError> {
    let plan = cut_nodes(m, keep_layer, meridians)?;
    if state.n() != 4 * m * m || signed_target.n() != state.n() {
        return Err(GaussianError::Dimension {
            expected: 4 * m * m,
            found: state.n().max(signed_target.n()),
        });
    }
    let layer_state = measure_q(state, &plan.other_layers)?;
    let layer_ideal = ideal_graph_delete(signed_target, &plan.other_layers)?;
    let pre_cut = nullifier_variances(&layer_state, &layer_ideal)?;
    let pre_cut_graph_error = max_entry_error(&effective_graph(&layer_state)?.v, &layer_ideal)?;

    let cut_state = measure_q(&layer_state, &plan.cut_macronodes)?;
    let cut_ideal = ideal_graph_delete(&layer_ideal, &plan.cut_macronodes)?;
    let post_cut = nullifier_variances(&cut_state, &cut_ideal)?;
    let post_cut_graph_error = max_entry_error(&effective_graph(&cut_state)?.v, &cut_ideal)?;
    Ok(GaussianCutReport {
        pre_cut,
        post_cut,
        pre_cut_graph_error,
        post_cut_graph_error,
        state: cut_state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m6_cut_leaves_a_disk() {
        let r = reduce_and_cut_ideal(6, 0, (0, 0)).unwrap();
        assert_eq!(r.plan.horizontal_meridian.len(), 6);
        assert_eq!(r.plan.vertical_meridian.len(), 8);
        assert_eq!(r.plan.shared.len(), 2);
        assert_eq!(r.node_count, 24);
        assert_eq!(r.components, 1);
        assert!(r.max_degree <= 4);
        assert_eq!(r.euler_characteristic, 1);
        assert_eq!(r.uniform_magnitude, Some(Quarter(1)));
        assert_eq!(r.axis_cycles, (vec![36], vec![36]));
    }

    #[test]
    fn every_layer_and_cell_gives_the_same_shape() {
        let base = reduce_and_cut_ideal(6, 0, (0, 0)).unwrap();
        for layer in 0..4 {
            for cell in [(0, 0), (2, 3), (5, 5)] {
                let r = reduce_and_cut_ideal(6, layer, cell).unwrap();
                assert_eq!(r.node_count, base.node_count);
                assert_eq!(r.edge_count, base.edge_count);
                assert_eq!(r.degree_census, base.degree_census);
                assert_eq!(r.euler_characteristic, 1);
            }
        }
    }

    #[test]
    fn bad_arguments() {
        assert_eq!(
            reduce_and_cut_ideal(6, 4, (0, 0)).unwrap_err(),
            GaussianError::Layer {
                layer: 4,
                block_side: 4
            }
        );
        assert_eq!(
            reduce_and_cut_ideal(6, 0, (6, 0)).unwrap_err(),
            GaussianError::Meridian(6, 0, 6)
        );
    }
}
