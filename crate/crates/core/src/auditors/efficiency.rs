//! Pareto efficiency of a weight vector as an approximation of a PCM.
//!
//! A vector `w'` dominates `w` when `|a_ij - w'_i/w'_j| <= |a_ij - w_i/w_j|`
//! for every pair and the inequality is strict for at least one pair. `w` is
//! efficient when nothing dominates it.
//!
//! The decision uses the digraph on alternatives with an arc `i -> j`
//! whenever `w_i / w_j >= a_ij`: `w` is efficient iff that digraph is
//! strongly connected. When it is not, some strongly connected component
//! `S` has no outgoing arc, so `w_i / w_j < a_ij` for all `i in S`,
//! `j not in S`. Scaling the weights in `S` up by
//! `t = min a_ij w_j / w_i > 1` moves every such ratio towards `a_ij`
//! without passing it and leaves the other ratios alone, which is the
//! returned certificate.

use serde::{Deserialize, Serialize};

use super::{AuditConfig, AuditReport, Property, Witness};
use crate::error::Result;
use crate::matrix::Pcm;
use crate::weighting::{Method, WeightVector};

/// Slack of the weak inequalities, relative to `max(1, a_ij, w_i/w_j)`.
pub const WEAK_TOL: f64 = 1e-12;
/// Minimum residual improvement counted as strict.
pub const STRICT_TOL: f64 = 1e-9;
/// An arc `i -> j` is present when `a_ij - w_i/w_j <= ARC_TOL`. It exceeds
/// [`STRICT_TOL`] so that every missing arc yields a strict improvement.
pub const ARC_TOL: f64 = 2e-9;

/// Verified evidence that `dominator` dominates `dominated`. Pairs are
/// ordered and 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceCertificate {
    pub dominated: WeightVector,
    pub dominator: WeightVector,
    pub weak_pairs: Vec<(usize, usize)>,
    pub strict_pairs: Vec<(usize, usize)>,
}

/// Why a candidate does not dominate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotDominating {
    /// The candidate approximates `a_ij` worse.
    WeakViolation { i: usize, j: usize },
    /// No pair improves strictly.
    NoStrictImprovement,
    /// Vectors of the wrong length.
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Efficiency {
    Efficient,
    Inefficient { certificate: DominanceCertificate },
}

impl Efficiency {
    pub fn is_efficient(&self) -> bool {
        matches!(self, Efficiency::Efficient)
    }
}

/// [`check_dominance_with`] at the default tolerances.
pub fn check_dominance(
    a: &Pcm,
    w: &WeightVector,
    candidate: &WeightVector,
) -> std::result::Result<DominanceCertificate, NotDominating> {
    check_dominance_with(a, w, candidate, WEAK_TOL, STRICT_TOL)
}

/// Evaluates the dominance inequalities over all ordered pairs `i != j`.
pub fn check_dominance_with(
    a: &Pcm,
    w: &WeightVector,
    candidate: &WeightVector,
    weak_tol: f64,
    strict_tol: f64,
) -> std::result::Result<DominanceCertificate, NotDominating> {
    let n = a.n();
    for v in [w, candidate] {
        if v.len() != n {
            return Err(NotDominating::SizeMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let mut weak_pairs = Vec::with_capacity(n * (n - 1));
    let mut strict_pairs = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let a_ij = a.get(i, j);
            let old_ratio = w[i] / w[j];
            let new_ratio = candidate[i] / candidate[j];
            let old = (a_ij - old_ratio).abs();
            let new = (a_ij - new_ratio).abs();
            let slack = weak_tol * 1f64.max(a_ij).max(old_ratio);
            if new > old + slack {
                return Err(NotDominating::WeakViolation { i, j });
            }
            weak_pairs.push((i, j));
            if old - new > strict_tol {
                strict_pairs.push((i, j));
            }
        }
    }
    if strict_pairs.is_empty() {
        return Err(NotDominating::NoStrictImprovement);
    }
    Ok(DominanceCertificate {
        dominated: w.clone(),
        dominator: candidate.normalized(w.normalization()),
        weak_pairs,
        strict_pairs,
    })
}

/// Adjacency of the efficiency digraph: `arcs[i][j]` iff
/// `a_ij - w_i / w_j <= ARC_TOL` (`i != j`).
pub fn efficiency_graph(a: &Pcm, w: &WeightVector) -> Vec<Vec<bool>> {
    let n = a.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && a.get(i, j) - w[i] / w[j] <= ARC_TOL)
                .collect()
        })
        .collect()
}

/// Reflexive transitive closure.
#[allow(clippy::needless_range_loop)]
fn reachability(arcs: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = arcs.len();
    let mut reach: Vec<Vec<bool>> = arcs.to_vec();
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// The sink component containing the smallest index, or `None` when the
/// digraph is strongly connected.
fn sink_component(arcs: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = arcs.len();
    let reach = reachability(arcs);
    if reach.iter().all(|row| row.iter().all(|&r| r)) {
        return None;
    }
    (0..n).find_map(|v| {
        let component: Vec<usize> = (0..n).filter(|&u| reach[v][u] && reach[u][v]).collect();
        let closed = (0..n).all(|u| !reach[v][u] || reach[u][v]);
        closed.then_some(component)
    })
}

/// Decides efficiency of `w` for `a`; an inefficient verdict carries a
/// certificate that passes [`check_dominance`].
pub fn test_efficiency(a: &Pcm, w: &WeightVector) -> Efficiency {
    let arcs = efficiency_graph(a, w);
    let Some(sink) = sink_component(&arcs) else {
        return Efficiency::Efficient;
    };
    let n = a.n();
    let mut in_sink = vec![false; n];
    for &i in &sink {
        in_sink[i] = true;
    }
    let t_max = sink
        .iter()
        .flat_map(|&i| (0..n).filter(|&j| !in_sink[j]).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j) * w[j] / w[i])
        .fold(f64::INFINITY, f64::min);
    // the full step lands exactly on the closest a_ij; the half step keeps
    // a margin in case rounding pushes the full step past it
    for t in [t_max, 0.5 * (1.0 + t_max)] {
        let scaled: Vec<f64> = (0..n)
            .map(|i| if in_sink[i] { w[i] * t } else { w[i] })
            .collect();
        let candidate =
            WeightVector::new(scaled, w.normalization()).expect("scaling keeps weights positive");
        if let Ok(certificate) = check_dominance(a, w, &candidate) {
            return Efficiency::Inefficient { certificate };
        }
    }
    unreachable!("a sink component always admits a dominating rescaling")
}

/// Efficiency of the weights produced by `method`.
pub fn audit_efficiency(a: &Pcm, method: Method, cfg: &AuditConfig) -> Result<AuditReport> {
    let w = method.weights(a, cfg.eigen)?.normalized(cfg.normalization);
    let mut report = AuditReport::new(Property::Efficiency, method);
    report.cr = cfg.context_cr(a);
    for (i, x) in w.iter().enumerate() {
        report.metrics.insert(format!("w_{}", i + 1), x);
    }
    let outcome = test_efficiency(a, &w);
    report
        .flags
        .insert("efficient".into(), outcome.is_efficient());
    if let Efficiency::Inefficient { certificate } = outcome {
        report.witnesses.push(Witness::Dominance(certificate));
    }
    Ok(report.conclude())
}
