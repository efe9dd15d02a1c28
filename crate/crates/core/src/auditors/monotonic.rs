//! Rank and weight monotonicity: raising `a_ij` must neither push `i` below
//! an alternative it used to match or beat, nor lower its normalized weight.

use serde::{Deserialize, Serialize};

use super::{AuditConfig, AuditReport, Property, Witness};
use crate::error::{Error, Result};
use crate::generators::next_scale_step;
use crate::matrix::{Entry, Pcm};
use crate::weighting::{ranking_of, Method, Normalization, WeightVector};

/// A decrease of the normalized weight larger than this is a violation.
pub const WEIGHT_DECREASE_TOL: f64 = 1e-10;

/// How `a_ij` is increased.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// Next value on the Saaty scale extended by 10.
    NextScaleStep,
    /// `a_ij * factor` with `factor > 1`.
    Multiply { factor: f64 },
}

impl Step {
    pub fn apply(self, a: &Pcm, i: usize, j: usize) -> Result<Pcm> {
        match self {
            Step::NextScaleStep => next_scale_step(a, i, j),
            Step::Multiply { factor } => {
                if !(factor.is_finite() && factor > 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "step factor must exceed 1, got {factor}"
                    )));
                }
                a.with_entry(i, j, Entry::Float(a.get(i, j) * factor))
            }
        }
    }
}

/// Increases `a_ij` by `step` and compares the weights before and after.
pub fn audit_monotonicity(
    a: &Pcm,
    i: usize,
    j: usize,
    step: Step,
    method: Method,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    let after = step.apply(a, i, j)?;
    audit_monotonicity_between(a, &after, i, j, method, cfg)
}

/// Compares `before` and `after`, where `after` differs from `before` by a
/// larger `a_ij`. Useful for parametric families.
pub fn audit_monotonicity_between(
    before: &Pcm,
    after: &Pcm,
    i: usize,
    j: usize,
    method: Method,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    let mut report = AuditReport::new(Property::Monotonic, method);
    report.cr = cfg.context_cr(before);
    let violations = compare(before, after, i, j, method, cfg, &mut report)?;
    report.flags.insert("rank_violation".into(), violations.0);
    report.flags.insert("weight_violation".into(), violations.1);
    Ok(report.conclude())
}

/// Pushes witnesses for one step; returns (rank violated, weight violated).
fn compare(
    before: &Pcm,
    after: &Pcm,
    i: usize,
    j: usize,
    method: Method,
    cfg: &AuditConfig,
    report: &mut AuditReport,
) -> Result<(bool, bool)> {
    if i == j || i >= before.n() || j >= before.n() {
        return Err(Error::IndexOutOfRange {
            i,
            j,
            n: before.n(),
        });
    }
    if after.n() != before.n() {
        return Err(Error::SizeMismatch {
            expected: before.n(),
            found: after.n(),
        });
    }
    let w0 = method
        .weights(before, cfg.eigen)?
        .normalized(Normalization::Sum1);
    let w1 = method
        .weights(after, cfg.eigen)?
        .normalized(Normalization::Sum1);
    let (drops, decrease) = step_violations(&w0, &w1, i, cfg.tie_tol);
    for &k in &drops {
        report.witnesses.push(Witness::RankDrop { i, j, k });
    }
    if decrease {
        report.witnesses.push(Witness::WeightDecrease {
            i,
            j,
            before: w0.share(i),
            after: w1.share(i),
        });
    }
    Ok((!drops.is_empty(), decrease))
}

/// Alternatives `k` that `i` matched or beat under `before` and trails under
/// `after`, and whether the normalized weight of `i` decreased.
pub fn step_violations(
    before: &WeightVector,
    after: &WeightVector,
    i: usize,
    tie_tol: f64,
) -> (Vec<usize>, bool) {
    let l0 = ranking_of(before, tie_tol).levels();
    let l1 = ranking_of(after, tie_tol).levels();
    let drops = (0..before.len())
        .filter(|&k| k != i && l0[i] <= l0[k] && l1[i] > l1[k])
        .collect();
    (
        drops,
        after.share(i) < before.share(i) - WEIGHT_DECREASE_TOL,
    )
}

/// Applies the next-scale step to every off-diagonal entry in turn. Entries
/// with no successor (10, or values off the scale) are skipped; if no entry
/// can be stepped the audit is inconclusive.
pub fn audit_all_steps(a: &Pcm, method: Method, cfg: &AuditConfig) -> Result<AuditReport> {
    let mut report = AuditReport::new(Property::Monotonic, method);
    report.cr = cfg.context_cr(a);
    let n = a.n();
    let (mut steps, mut skipped, mut rank, mut weight) = (0usize, 0usize, false, false);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let after = match next_scale_step(a, i, j) {
                Ok(m) => m,
                Err(Error::NotOnScale { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let (r, w) = compare(a, &after, i, j, method, cfg, &mut report)?;
            rank |= r;
            weight |= w;
            steps += 1;
        }
    }
    report.metrics.insert("steps".into(), steps as f64);
    report
        .metrics
        .insert("steps_skipped".into(), skipped as f64);
    report.flags.insert("rank_violation".into(), rank);
    report.flags.insert("weight_violation".into(), weight);
    if steps == 0 {
        report.notes.push("no entry has a next scale step".into());
    }
    Ok(report.conclude())
}
