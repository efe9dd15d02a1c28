//! Group coherence for choice: aggregating opinions before or after
//! weighting must crown the same alternatives.

use super::{AuditConfig, AuditReport, Property, Witness};
use crate::error::{Error, Result};
use crate::matrix::{aggregate_geometric, Pcm};
use crate::weighting::{ranking_of, Method, WeightVector};

/// Path 1 weights every matrix with `method` and takes the (weighted)
/// geometric mean of the weight vectors; path 2 aggregates the matrices
/// entrywise by (weighted) geometric mean and weights the aggregate.
/// Violated iff the two top tie classes differ.
pub fn audit_group_coherence(
    matrices: &[Pcm],
    method: Method,
    group_weights: Option<&[f64]>,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    if matrices.len() < 2 {
        return Err(Error::InvalidArgument(
            "group coherence needs at least two matrices".into(),
        ));
    }
    let n = matrices[0].n();
    if let Some(m) = matrices.iter().find(|m| m.n() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: m.n(),
        });
    }
    if let Some(w) = group_weights {
        if w.len() != matrices.len() {
            return Err(Error::LengthMismatch {
                left: matrices.len(),
                right: w.len(),
            });
        }
        if let Some(index) = w.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::NonPositiveWeight { index });
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "group weights must sum to 1, got {total}"
            )));
        }
    }
    let uniform = vec![1.0 / matrices.len() as f64; matrices.len()];
    let gw = group_weights.unwrap_or(&uniform);

    let mut report = AuditReport::new(Property::Group, method);
    let individual: Vec<WeightVector> = matrices
        .iter()
        .map(|m| method.weights(m, cfg.eigen))
        .collect::<Result<_>>()?;
    let mut log_mean = vec![0.0; n];
    for (w, g) in individual.iter().zip(gw) {
        for (acc, x) in log_mean.iter_mut().zip(w.iter()) {
            *acc += g * x.ln();
        }
    }
    let combined = WeightVector::new(
        log_mean.into_iter().map(f64::exp).collect(),
        cfg.normalization,
    )?;
    let aggregate = aggregate_geometric(matrices, Some(gw))?;
    let of_aggregate = method
        .weights(&aggregate, cfg.eigen)?
        .normalized(cfg.normalization);
    report.cr = cfg.context_cr(&aggregate);

    for (k, w) in individual.iter().enumerate() {
        let w = w.normalized(cfg.normalization);
        report.rankings.insert(
            format!("individual_{}", k + 1),
            ranking_of(&w, cfg.tie_tol).to_string(),
        );
    }
    let rank_combined = ranking_of(&combined, cfg.tie_tol);
    let rank_aggregate = ranking_of(&of_aggregate, cfg.tie_tol);
    report
        .rankings
        .insert("combined_weights".into(), rank_combined.to_string());
    report
        .rankings
        .insert("aggregate_matrix".into(), rank_aggregate.to_string());
    for i in 0..n {
        report
            .metrics
            .insert(format!("w_combined_{}", i + 1), combined[i]);
        report
            .metrics
            .insert(format!("w_aggregate_{}", i + 1), of_aggregate[i]);
    }
    if rank_combined.top_class() != rank_aggregate.top_class() {
        report.witnesses.push(Witness::TopChange {
            expected: rank_combined.top_class().to_vec(),
            found: rank_aggregate.top_class().to_vec(),
        });
    }
    Ok(report.conclude())
}
