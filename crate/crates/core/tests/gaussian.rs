use cvcomb_core::exact::Quarter;
use cvcomb_core::gaussian::{
    effective_graph, evolution_transform, evolve_dense, ideal_graph_delete, max_entry_error, measure_q,
    nullifier_variances, oracle_covariance, oracle_distance, reduce_and_cut_gaussian, reduce_and_cut_ideal, vacuum,
    GaussianState,
};
use cvcomb_core::lattice::{build_ring_supergraph, build_torus_supergraph, expand, PhysAdjacency};
use cvcomb_core::verify::{lattice_state, random_adjacency};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn torus(m: usize) -> PhysAdjacency {
    expand(&build_torus_supergraph(m).unwrap())
}

fn adjacency(seed: u64, n: usize) -> DMatrix<f64> {
    random_adjacency(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Relabels modes: old mode `a` becomes `perm[a]`.
fn permute_state(s: &GaussianState, perm: &[usize]) -> GaussianState {
    let n = s.n();
    let idx = |k: usize| if k < n { perm[k] } else { n + perm[k - n] };
    let mut cov = DMatrix::zeros(2 * n, 2 * n);
    let mut mean = DVector::zeros(2 * n);
    for a in 0..2 * n {
        mean[idx(a)] = s.mean()[a];
        for b in 0..2 * n {
            cov[(idx(a), idx(b))] = s.cov()[(a, b)];
        }
    }
    GaussianState::from_parts(mean, cov).unwrap()
}

#[test]
fn vacuum_nullifiers_are_one_half_per_unit_row_norm() {
    let a = torus(4);
    let rep = nullifier_variances(&vacuum(a.n()).unwrap(), &a).unwrap();
    // Var(p) + Σ w² Var(q) = 1/2 + 1/2
    assert!(rep.variances.iter().all(|v| (v - 1.0).abs() < 1e-15));
}

#[test]
fn lattice_nullifiers_follow_the_closed_form() {
    let a = torus(6);
    for r in [0.25, 0.5, 1.0, 2.0] {
        let c = lattice_state(&a, r).unwrap();
        let expect = (-4.0 * r).exp();
        for v in &c.report.variances {
            assert!((v - expect).abs() < 1e-9 * expect.max(1e-3), "r={r} v={v}");
        }
        if r <= 1.0 {
            assert!(c.state.satisfies_uncertainty(1e-9));
        }
    }
}

#[test]
fn layer_reduction_leaves_a_uniform_square_lattice() {
    let a = torus(6);
    let measured: Vec<usize> = (0..a.n()).filter(|p| p % 4 != 0).collect();
    let ideal = ideal_graph_delete(&a, &measured).unwrap();
    assert_eq!(ideal.n(), 36);
    for i in 0..36 {
        assert_eq!(ideal.degree(i), 4);
        assert!(ideal.row(i).iter().all(|&(_, w)| w.abs() == Quarter(1)));
    }
    let mut errors = Vec::new();
    for r in [1.0, 2.0, 3.0] {
        let c = lattice_state(&a, r).unwrap();
        let reduced = measure_q(&c.state, &measured).unwrap();
        let target = ideal_graph_delete(&c.signed_target, &measured).unwrap();
        errors.push(max_entry_error(&effective_graph(&reduced).unwrap().v, &target).unwrap());
    }
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
}

#[test]
fn crown_reduces_to_a_uniform_half_ring() {
    let a = expand(&build_ring_supergraph(4).unwrap());
    let top: Vec<usize> = (0..4).map(|i| 2 * i).collect();
    let ring = ideal_graph_delete(&a, &top).unwrap();
    assert_eq!(ring.edge_count(), 4);
    assert!(ring.pairs().all(|(_, _, w)| w.abs() == Quarter(2)));
    assert!((0..4).all(|i| ring.degree(i) == 2));
}

#[test]
fn pair_effective_graph_converges() {
    let a = PhysAdjacency::from_pairs(2, [(0, 1, Quarter::ONE)]).unwrap();
    let c = lattice_state(&a, 5.0).unwrap();
    let g = effective_graph(&c.state).unwrap();
    assert!(max_entry_error(&g.v, &c.signed_target).unwrap() < 1e-3);
    assert!((g.u[(0, 0)] - 1.0 / (20.0f64).cosh()).abs() < 1e-12);
}

#[test]
fn cut_does_not_increase_the_residual() {
    let m = 6;
    let ideal = reduce_and_cut_ideal(m, 0, (0, 0)).unwrap();
    assert_eq!(ideal.node_count, 24);
    assert_eq!(ideal.edge_count, 38);
    assert_eq!(ideal.cycle_rank, 15);
    let a = torus(m);
    for r in [1.0, 2.0] {
        let c = lattice_state(&a, r).unwrap();
        let rep = reduce_and_cut_gaussian(&c.state, &c.signed_target, m, 0, (0, 0)).unwrap();
        assert!(rep.post_cut.max_variance <= rep.pre_cut.max_variance * (1.0 + 1e-12));
        assert_eq!(rep.state.n(), 24);
    }
}

#[test]
fn out_of_range_measurement_rejected() {
    let s = vacuum(3).unwrap();
    assert!(measure_q(&s, &[3]).is_err());
    assert!(measure_q(&s, &[1, 1]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_is_symplectic_and_physical(seed in any::<u64>(), n in 1usize..=6, r in 0.0f64..=2.0) {
        let a = adjacency(seed, n);
        let s = evolution_transform(&a, r).unwrap().matrix();
        let mut omega = DMatrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            omega[(k, n + k)] = 1.0;
            omega[(n + k, k)] = -1.0;
        }
        let residual = (&s * &omega * s.transpose() - &omega).amax();
        prop_assert!(residual < 1e-9 * s.amax().powi(2));
        let state = evolution_transform(&a, r).unwrap().apply(&vacuum(n).unwrap()).unwrap();
        prop_assert!(state.satisfies_uncertainty(1e-8));
    }

    #[test]
    fn closed_form_matches_the_oracle(seed in any::<u64>(), n in 1usize..=4, r in 0.0f64..=1.5) {
        let a = adjacency(seed, n);
        let closed = evolution_transform(&a, r).unwrap().apply(&vacuum(n).unwrap()).unwrap();
        let oracle = oracle_covariance(&a, r, 1e-11);
        prop_assert!(oracle_distance(closed.cov(), &oracle) < 1e-9);
    }

    #[test]
    fn measurements_commute(seed in any::<u64>(), r in 0.0f64..=1.0) {
        let a = adjacency(seed, 6);
        let s = evolution_transform(&a, r).unwrap().apply(&vacuum(6).unwrap()).unwrap();
        // measure {0, 3} at once, or 0 then (old 3 = new 2)
        let joint = measure_q(&s, &[0, 3]).unwrap();
        let staged = measure_q(&measure_q(&s, &[0]).unwrap(), &[2]).unwrap();
        prop_assert!((joint.cov() - staged.cov()).amax() < 1e-10 * joint.cov().amax().max(1.0));
        prop_assert!((joint.purity_det() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn nullifiers_are_relabel_invariant(perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle(), r in 0.0f64..=1.5) {
        let a = expand(&build_ring_supergraph(8).unwrap());
        let s = evolve_dense(&a.to_f64(), r).unwrap();
        let base = nullifier_variances(&s, &a).unwrap();
        let moved = nullifier_variances(&permute_state(&s, &perm), &a.permuted(&perm)).unwrap();
        for (old, &new) in perm.iter().enumerate() {
            prop_assert!((base.variances[old] - moved.variances[new]).abs() < 1e-12);
        }
    }
}
