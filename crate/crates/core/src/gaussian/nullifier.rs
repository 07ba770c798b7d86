use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::decimal::sig12;
use crate::gaussian::{GaussianError, GaussianState};
use crate::lattice::{write_phys_triplets, PhysAdjacency};

/// Variances of the nullifiers `p_i − Σ_j A_ij q_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct NullifierReport {
    pub target_adjacency: PhysAdjacency,
    pub variances: Vec<f64>,
    pub max_variance: f64,
    pub squeeze_r: Option<f64>,
}

impl NullifierReport {
    pub fn with_r(mut self, r: f64) -> Self {
        self.squeeze_r = Some(r);
        self
    }
}

pub fn nullifier_variances(state: &GaussianState, target: &PhysAdjacency) -> Result<NullifierReport, GaussianError> {
    let n = state.n();
    if target.n() != n {
        return Err(GaussianError::Dimension {
            expected: n,
            found: target.n(),
        });
    }
    let c = state.cov();
    let variances: Vec<f64> = (0..n)
        .map(|i| {
            let row = target.row(i);
            let mut v = c[(n + i, n + i)];
            for &(j, w) in row {
                v -= 2.0 * w.to_f64() * c[(n + i, j)];
                for &(k, u) in row {
                    v += w.to_f64() * u.to_f64() * c[(j, k)];
                }
            }
            v.max(0.0)
        })
        .collect();
    let max_variance = variances.iter().copied().fold(0.0, f64::max);
    Ok(NullifierReport {
        target_adjacency: target.clone(),
        variances,
        max_variance,
        squeeze_r: None,
    })
}

/// First 16 hex digits of the SHA-256 of the target's triplet export.
pub fn target_hash(a: &PhysAdjacency) -> String {
    let digest = Sha256::digest(write_phys_triplets(a).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn r_text(r: Option<f64>) -> String {
    r.map_or_else(|| "none".to_string(), sig12)
}

/// Table `i variance` followed by `r=… max=… target=…`.
pub fn write_nullifier_report(rep: &NullifierReport) -> String {
    let mut out = String::from("i variance\n");
    for (i, v) in rep.variances.iter().enumerate() {
        let _ = writeln!(out, "{i} {}", sig12(*v));
    }
    let _ = writeln!(
        out,
        "r={} max={} target={}",
        r_text(rep.squeeze_r),
        sig12(rep.max_variance),
        target_hash(&rep.target_adjacency)
    );
    out
}

/// Key-value variant of [`write_nullifier_report`].
pub fn write_nullifier_records(rep: &NullifierReport) -> String {
    let mut out = format!(
        "r={} max={} target={} n={}\n",
        r_text(rep.squeeze_r),
        sig12(rep.max_variance),
        target_hash(&rep.target_adjacency),
        rep.variances.len()
    );
    for (i, v) in rep.variances.iter().enumerate() {
        let _ = writeln!(out, "i={i} variance={}", sig12(*v));
    }
    out
}
