use cvcomb_core::exact::Quarter;
use cvcomb_core::hankel::{compile_pump, shorthand_of, HankelError};
use cvcomb_core::lattice::{
    bicoloring, build_ring_supergraph, build_torus_supergraph, check_orthogonal, coordinates, expand, projector2,
    projector4, projector_factors, renumber_to_block_hankel, two_path_weight, Permutation, PhysAdjacency, PiSign, Step,
};
use num_rational::Rational64;
use proptest::prelude::*;

fn torus(m: usize) -> PhysAdjacency {
    expand(&build_torus_supergraph(m).unwrap())
}

#[test]
fn torus_lattices_are_exactly_orthogonal() {
    for m in [4, 6, 8, 10] {
        let a = torus(m);
        assert_eq!(a.n(), 4 * m * m);
        assert!(!a.has_self_loops());
        for i in 0..a.n() {
            assert_eq!(a.row_norm_sixteenths(i), 16, "M={m} row {i}");
            assert!(a.row(i).iter().all(|&(_, w)| w.abs() == Quarter(1)));
        }
        assert_eq!(a.edge_count(), 32 * m * m);
        let rep = check_orthogonal(&a);
        assert!(rep.is_orthogonal, "M={m}: {rep:?}");
        let c = bicoloring(&a).unwrap();
        assert!(c.is_valid_for(&a));
    }
}

#[test]
fn square_torus_is_not_orthogonal() {
    // plain 4x4 torus with unit weights: neighbours of a neighbour meet once
    let m = 4;
    let idx = |x: usize, y: usize| (y % m) * m + (x % m);
    let mut pairs = Vec::new();
    for y in 0..m {
        for x in 0..m {
            pairs.push((idx(x, y), idx(x + 1, y), Quarter::ONE));
            pairs.push((idx(x, y), idx(x, y + 1), Quarter::ONE));
        }
    }
    let a = PhysAdjacency::from_pairs(m * m, pairs).unwrap();
    assert!(!check_orthogonal(&a).is_orthogonal);
    // on a 4x4 torus both (1,1) and (2,0) offsets are reached by two 2-paths
    assert_eq!(
        two_path_weight(&a, idx(0, 0), idx(1, 1)).unwrap(),
        Rational64::from_integer(2)
    );
    assert_eq!(
        two_path_weight(&a, idx(0, 0), idx(2, 0)).unwrap(),
        Rational64::from_integer(2)
    );
    assert_eq!(
        two_path_weight(&a, idx(0, 0), idx(0, 0)).unwrap(),
        Rational64::from_integer(4)
    );
}

#[test]
fn ring_crown_is_orthogonal_and_reduces_to_a_uniform_ring() {
    for n in [4, 6, 8] {
        let a = expand(&build_ring_supergraph(n).unwrap());
        assert!(check_orthogonal(&a).is_orthogonal);
        assert!(bicoloring(&a).is_ok());
    }
    assert!(build_ring_supergraph(5).is_err());
    assert!(build_ring_supergraph(2).is_err());
}

#[test]
fn ring_hankel_finding() {
    let four = expand(&build_ring_supergraph(4).unwrap());
    let s = shorthand_of(&four, 2).unwrap();
    assert_eq!(compile_pump(&s).unwrap().line_count(), 3);
    for n in [6, 8] {
        let a = expand(&build_ring_supergraph(n).unwrap());
        assert!(matches!(shorthand_of(&a, 2), Err(HankelError::NotHankel { .. })));
    }
}

#[test]
fn only_four_by_four_blocks_certify_before_renumbering() {
    let a = torus(6);
    assert!(matches!(shorthand_of(&a, 2), Err(HankelError::NotHankel { .. })));
    let s = shorthand_of(&a, 4).unwrap();
    assert_eq!(s.len(), 2 * 36 - 1);
    assert_eq!(s.corner_index(), 35);
    assert_eq!(s.nonzero_count(), 7);
}

#[test]
fn renumbering_is_a_similarity() {
    for m in [6, 8] {
        let a = torus(m);
        let r = renumber_to_block_hankel(&a, m).unwrap();
        let p = r.permutation.as_slice();
        for (i, j, w) in a.pairs() {
            assert_eq!(r.matrix.get(p[i], p[j]), w);
        }
        assert_eq!(r.matrix.edge_count(), a.edge_count());
        assert!(check_orthogonal(&r.matrix).is_orthogonal);
        assert_eq!(r.permutation.inverse().apply(&r.matrix), a);
        assert_eq!(r.shorthand.nonzero_count(), 15);
        assert_eq!(r.report.block_scalar, Some(Rational64::new(1, 2)));
    }
}

#[test]
fn renumbering_report_records_the_published_layout() {
    let r = renumber_to_block_hankel(&torus(6), 6).unwrap();
    assert_eq!(r.report.printed_run_lengths, (11, 9));
    assert_eq!(r.report.observed_run_lengths, (5, 21));
    assert!(!r.report.matches_printed_positions);
    assert!(r.report.matches_layout_shape);
    assert!(!r.report.discrepancies.is_empty());
}

#[test]
fn coordinate_label_census() {
    for m in [4, 6, 8] {
        let s = build_torus_supergraph(m).unwrap();
        let c = coordinates(m).unwrap();
        for i in 0..m * m {
            let mut labels: Vec<usize> = s
                .neighbors(i)
                .into_iter()
                .map(|j| s.block(i, j).unwrap().projector_label().unwrap().0)
                .collect();
            labels.sort_unstable();
            assert_eq!(labels, vec![0, 1, 2, 3]);
        }
        assert_eq!(c.axis_cycle_lengths(Step::Right), vec![m * m]);
    }
}

#[test]
fn projector_pairing() {
    for j in 0..4 {
        let (s, t) = projector_factors(j).unwrap();
        assert_eq!(projector2(s).kron(&projector2(t)).unwrap(), projector4(j).unwrap());
    }
    let zero = projector2(PiSign::Plus).mul(&projector2(PiSign::Minus)).unwrap();
    assert!(zero.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_paths_on_lattices(m_half in 2usize..=5, seed in any::<u64>()) {
        let m = 2 * m_half;
        let a = torus(m);
        let n = a.n();
        let j = (seed as usize) % n;
        let k = (seed.rotate_left(17) as usize) % n;
        let expect = if j == k { 1 } else { 0 };
        prop_assert_eq!(two_path_weight(&a, j, k).unwrap(), Rational64::from_integer(expect));
    }

    #[test]
    fn permutation_round_trip(perm in Just((0..32usize).collect::<Vec<_>>()).prop_shuffle()) {
        let a = torus(4).induced(&(0..32).collect::<Vec<_>>());
        let p = Permutation::from_vec(perm).unwrap();
        prop_assert_eq!(p.inverse().apply(&p.apply(&a)), a);
    }
}
