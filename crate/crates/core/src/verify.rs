//! End-to-end checks, one per acceptance criterion.
//!
//! Each `criterion_*` function runs its check at the parameters it is given
//! and returns a [`CriterionResult`] whose detail line contains only
//! deterministic values, so two runs render byte-identical reports.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decimal::sig12;
use crate::error::Error;
use crate::gaussian::{
    best_phase_convention, effective_graph, evolve, evolve_dense, ideal_graph_delete, max_entry_error, measure_q,
    nullifier_variances, oracle_covariance, oracle_distance, reduce_and_cut_gaussian, reduce_and_cut_ideal,
    write_nullifier_report, EvolutionParams, PhaseChoice,
};
use crate::hankel::{compile_pump, matrix_of, scaling_report, write_pump_file, write_shorthand};
use crate::lattice::{
    bicoloring, build_ring_supergraph, build_torus_supergraph, check_orthogonal, expand, published_layout_positions,
    renumber_to_block_hankel, write_phys_triplets, PhysAdjacency,
};
use crate::par::{map_slice, Execution};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub m: usize,
    /// Squeezing values for the lattice reduction and the cut.
    pub r_values: Vec<f64>,
    /// Squeezing values for the nullifier-decay check.
    pub decay_r: Vec<f64>,
    /// Squeezing values for the crown-to-ring reduction.
    pub crown_r: Vec<f64>,
    pub oracle_samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            m: 6,
            r_values: vec![1.0, 2.0],
            decay_r: vec![0.5, 1.0, 2.0],
            crown_r: vec![1.0, 2.0, 3.0],
            oracle_samples: 20,
            seed: 0x005e_edc1_u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub results: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(out, "{}", r.line());
        }
        let passed = self.results.iter().filter(|r| r.pass).count();
        let _ = writeln!(out, "summary passed={passed} total={}", self.results.len());
        out
    }
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|&x| sig12(x)).collect::<Vec<_>>().join(",")
}

fn sorted(rs: &[f64]) -> Vec<f64> {
    let mut rs = rs.to_vec();
    rs.sort_by(f64::total_cmp);
    rs
}

/// The torus lattice evolved to `r` under its own adjacency, with the best
/// phase convention applied.
pub fn lattice_state(a: &PhysAdjacency, r: f64) -> Result<PhaseChoice, Error> {
    let coloring = bicoloring(a)?;
    let state = evolve(&EvolutionParams {
        squeeze_r: r,
        adjacency: a.clone(),
    })?;
    Ok(best_phase_convention(&state, &coloring, a)?)
}

pub fn criterion_orthogonality(ms: &[usize]) -> Result<CriterionResult, Error> {
    let mut pass = true;
    let mut parts = Vec::new();
    for &m in ms {
        let rep = check_orthogonal(&expand(&build_torus_supergraph(m)?));
        pass &= rep.is_orthogonal && !rep.has_self_loops;
        parts.push(format!(
            "M={m} orthogonal={} worst={}",
            rep.is_orthogonal, rep.worst_deviation
        ));
    }
    Ok(CriterionResult {
        id: 1,
        name: "exact-orthogonality",
        pass,
        detail: parts.join("; "),
    })
}

pub fn criterion_block_hankel(m: usize) -> Result<CriterionResult, Error> {
    let a = expand(&build_torus_supergraph(m)?);
    let r = renumber_to_block_hankel(&a, m)?;
    let (s, t) = r.report.printed_run_lengths;
    let expected = published_layout_positions(s as usize, t as usize);
    let rebuilt = PhysAdjacency::from_dense(&matrix_of(&r.shorthand))?;
    let round_trip = r.permutation.inverse().apply(&r.matrix) == a && rebuilt == r.matrix;
    let count = r.shorthand.nonzero_count();
    let at_positions = r.report.nonzero_positions == expected;
    let pass = count == 15 && at_positions && r.report.all_pi_proportional && round_trip;
    let (os, ot) = r.report.observed_run_lengths;
    Ok(CriterionResult {
        id: 2,
        name: "block-hankel-structure",
        pass,
        detail: format!(
            "M={m} block_hankel=true nonzero={count} pi_proportional={} round_trip={round_trip} \
             expected_s={s} expected_t={t} observed_s={os} observed_t={ot} positions_match={at_positions}",
            r.report.all_pi_proportional
        ),
    })
}

pub fn criterion_pump_scaling(ms: &[usize]) -> Result<CriterionResult, Error> {
    let rows = scaling_report(ms)?;
    let pass = rows
        .iter()
        .all(|r| r.pump_lines == 15 && r.physical_edges == 32 * r.m * r.m);
    let detail = rows
        .iter()
        .map(|r| {
            format!(
                "M={} pump_lines={} physical_edges={} span={}",
                r.m, r.pump_lines, r.physical_edges, r.bandwidth_span
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok(CriterionResult {
        id: 3,
        name: "pump-constancy",
        pass,
        detail,
    })
}

/// Random symmetric zero-diagonal matrix with entries drawn from U(−1, 1),
/// rescaled to spectral norm at most 1.
pub fn random_adjacency(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let w: f64 = rng.gen_range(-1.0..1.0);
            a[(i, j)] = w;
            a[(j, i)] = w;
        }
    }
    let norm = a.clone().symmetric_eigen().eigenvalues.amax();
    if norm > 1.0 {
        a /= norm;
    }
    a
}

pub fn criterion_oracle(samples: usize, seed: u64) -> Result<CriterionResult, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = vec![(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]), 0.5)];
    for _ in 0..samples {
        let n = rng.gen_range(1..=6);
        let r = rng.gen_range(0.0..=2.0);
        cases.push((random_adjacency(&mut rng, n), r));
    }
    let distances = map_slice(Execution::default(), &cases, |(a, r)| {
        let closed = evolve_dense(a, *r).map(|s| s.cov().clone());
        closed.map(|c| oracle_distance(&c, &oracle_covariance(a, *r, 1e-11)))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let worst = distances.iter().copied().fold(0.0, f64::max);
    Ok(CriterionResult {
        id: 4,
        name: "evolution-oracle",
        pass: worst < 1e-10,
        detail: format!(
            "cases={} pair_distance={} worst_distance={}",
            cases.len(),
            sig12(distances[0]),
            sig12(worst)
        ),
    })
}

/// Max nullifier variance after the best phase convention, for each `r`.
fn decay_curve(a: &PhysAdjacency, rs: &[f64]) -> Result<Vec<Vec<f64>>, Error> {
    map_slice(Execution::default(), rs, |&r| {
        lattice_state(a, r).map(|c| c.report.variances)
    })
    .into_iter()
    .collect()
}

pub fn criterion_nullifier_decay(m: usize, rs: &[f64]) -> Result<CriterionResult, Error> {
    let rs = sorted(rs);
    let pair = PhysAdjacency::from_pairs(2, [(0, 1, crate::exact::Quarter::ONE)])?;
    let cases = [
        ("pair", pair),
        ("ring4", expand(&build_ring_supergraph(4)?)),
        ("lattice", expand(&build_torus_supergraph(m)?)),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, a) in &cases {
        let curves = decay_curve(a, &rs)?;
        let maxes: Vec<f64> = curves.iter().map(|v| v.iter().copied().fold(0.0, f64::max)).collect();
        let mut worst_gap = 0.0f64;
        for (r, vars) in rs.iter().zip(&curves) {
            let target = (-2.0 * r).exp() / 2.0;
            for v in vars {
                worst_gap = worst_gap.max((v - target).abs());
            }
        }
        let monotone = strictly_decreasing(&maxes);
        pass &= worst_gap <= 1e-6 && monotone;
        parts.push(format!(
            "{name} max_var=[{}] gap_to_target={} monotone={monotone}",
            list(&maxes),
            sig12(worst_gap)
        ));
    }
    Ok(CriterionResult {
        id: 5,
        name: "nullifier-decay",
        pass,
        detail: format!("r=[{}] target=exp(-2r)/2; {}", list(&rs), parts.join("; ")),
    })
}

pub fn criterion_crown(rs: &[f64]) -> Result<CriterionResult, Error> {
    let rs = sorted(rs);
    let a = expand(&build_ring_supergraph(4)?);
    let top: Vec<usize> = (0..4).map(|i| 2 * i).collect();
    let ideal = ideal_graph_delete(&a, &top)?;
    let uniform = ideal.pairs().all(|(_, _, w)| w.abs().0 == 2) && ideal.edge_count() == 4;
    let residuals = map_slice(Execution::default(), &rs, |&r| -> Result<f64, Error> {
        let c = lattice_state(&a, r)?;
        let reduced = measure_q(&c.state, &top)?;
        let target = ideal_graph_delete(&c.signed_target, &top)?;
        Ok(nullifier_variances(&reduced, &target)?.max_variance)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let decreasing = strictly_decreasing(&residuals);
    Ok(CriterionResult {
        id: 6,
        name: "crown-to-ring",
        pass: uniform && decreasing,
        detail: format!(
            "r=[{}] residual=[{}] decreasing={decreasing} ring_edges={} uniform_half={uniform}",
            list(&rs),
            list(&residuals),
            ideal.edge_count()
        ),
    })
}

pub fn criterion_layer_reduction(m: usize, rs: &[f64]) -> Result<CriterionResult, Error> {
    let rs = sorted(rs);
    let a = expand(&build_torus_supergraph(m)?);
    let measured: Vec<usize> = (0..a.n()).filter(|p| p % 4 != 0).collect();
    let ideal = ideal_graph_delete(&a, &measured)?;
    let uniform = ideal.pairs().all(|(_, _, w)| w.abs().0 == 1);
    let results = map_slice(Execution::default(), &rs, |&r| -> Result<(f64, f64), Error> {
        let c = lattice_state(&a, r)?;
        let reduced = measure_q(&c.state, &measured)?;
        let target = ideal_graph_delete(&c.signed_target, &measured)?;
        let residual = nullifier_variances(&reduced, &target)?.max_variance;
        let v_error = max_entry_error(&effective_graph(&reduced)?.v, &target)?;
        Ok((residual, v_error))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let residuals: Vec<f64> = results.iter().map(|x| x.0).collect();
    let errors: Vec<f64> = results.iter().map(|x| x.1).collect();
    let pass = uniform && strictly_decreasing(&residuals) && strictly_decreasing(&errors);
    Ok(CriterionResult {
        id: 7,
        name: "lattice-reduction",
        pass,
        detail: format!(
            "M={m} r=[{}] residual=[{}] graph_error=[{}] remaining_nodes={} uniform_quarter={uniform}",
            list(&rs),
            list(&residuals),
            list(&errors),
            ideal.n()
        ),
    })
}

pub fn criterion_cut(m: usize, rs: &[f64]) -> Result<CriterionResult, Error> {
    let rs = sorted(rs);
    let ideal = reduce_and_cut_ideal(m, 0, (0, 0))?;
    let a = expand(&build_torus_supergraph(m)?);
    let residuals = map_slice(Execution::default(), &rs, |&r| -> Result<f64, Error> {
        let c = lattice_state(&a, r)?;
        Ok(reduce_and_cut_gaussian(&c.state, &c.signed_target, m, 0, (0, 0))?
            .post_cut
            .max_variance)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let connected = ideal.components == 1;
    let pass = connected && ideal.max_degree <= 4 && strictly_decreasing(&residuals);
    let census = ideal
        .degree_census
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(",");
    Ok(CriterionResult {
        id: 8,
        name: "torus-cut",
        pass,
        detail: format!(
            "M={m} nodes={} edges={} connected={connected} max_degree={} degrees={census} cycle_rank={} squares={} \
             euler={} axis_cycles={:?}/{:?} r=[{}] residual=[{}]",
            ideal.node_count,
            ideal.edge_count,
            ideal.max_degree,
            ideal.cycle_rank,
            ideal.square_faces,
            ideal.euler_characteristic,
            ideal.axis_cycles.0,
            ideal.axis_cycles.1,
            list(&rs),
            list(&residuals)
        ),
    })
}

/// The text artifacts of one pipeline run, concatenated.
pub fn artifact_bundle(config: &VerifyConfig) -> Result<String, Error> {
    let m = config.m;
    let a = expand(&build_torus_supergraph(m)?);
    let r = renumber_to_block_hankel(&a, m)?;
    let mut out = write_phys_triplets(&a);
    out.push_str(&write_shorthand(&r.shorthand));
    out.push_str(&write_pump_file(&compile_pump(&r.shorthand)?));
    for &sq in &config.r_values {
        let c = lattice_state(&a, sq)?;
        out.push_str(&write_nullifier_report(&c.report.with_r(sq)));
    }
    Ok(out)
}

pub fn criterion_determinism(config: &VerifyConfig) -> Result<CriterionResult, Error> {
    let first = artifact_bundle(config)?;
    let second = artifact_bundle(config)?;
    Ok(CriterionResult {
        id: 9,
        name: "determinism",
        pass: first == second,
        detail: format!("bytes={} identical={}", first.len(), first == second),
    })
}

pub fn verify_all(config: &VerifyConfig) -> Result<VerifyReport, Error> {
    let m = config.m;
    let results = vec![
        criterion_orthogonality(&[m, m + 2])?,
        criterion_block_hankel(m)?,
        criterion_pump_scaling(&[m, m + 2, m + 4])?,
        criterion_oracle(config.oracle_samples, config.seed)?,
        criterion_nullifier_decay(m, &config.decay_r)?,
        criterion_crown(&config.crown_r)?,
        criterion_layer_reduction(m, &config.r_values)?,
        criterion_cut(m, &config.r_values)?,
        criterion_determinism(config)?,
    ];
    Ok(VerifyReport { results })
}
