//! Seeded Monte Carlo runs over a generation scheme.
//!
//! Trial `t` draws from stream `t` of the scheme's purpose under the spec's
//! seed, so a trial's matrix does not depend on how trials are scheduled.
//! Trials run in parallel and are collected in trial order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::auditors::{step_violations, test_efficiency};
use crate::error::{Error, Result};
use crate::generators::{
    consistent_perturbed_with, ishizaka_lusti_with, next_scale_step, saaty_uniform_with,
    unit_interval_ratio_with, ExperimentSpec, IshizakaOutcome, Scheme,
};
use crate::inconsistency::{report_from_lambda, RiTable};
use crate::matrix::Pcm;
use crate::metrics::{chebyshev, euclidean, kendall_tau, max_ratio};
use crate::rng::Stream;
use crate::weighting::{
    geometric_mean_weights, ranking_of, right_eigenvector, EigenConfig, Method, Normalization,
    WeightVector, DEFAULT_TIE_TOL,
};

/// Version of the CSV layouts below; bumped on any column change.
pub const SCHEMA_VERSION: u32 = 1;

/// Everything measured on one generated matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub schema_version: u32,
    pub trial: u64,
    pub cr: f64,
    /// CR group of the Ishizaka-Lusti design (1 to 5), empty otherwise.
    pub group: Option<u8>,
    /// Ishizaka-Lusti matrices with `CR >= 0.1`; excluded from summaries.
    pub dismissed: bool,
    /// Rankings of `w^R` and `w^{-L}` differ.
    pub rank_reversal: bool,
    pub top_reversal: bool,
    pub full_reversal: bool,
    /// Kendall tau-b between the right and inverse left rankings.
    pub tau: f64,
    pub euclidean: f64,
    pub chebyshev: f64,
    pub max_ratio: f64,
    /// Tau-b of the GM ranking against the right and inverse left rankings.
    pub tau_gm_right: f64,
    pub tau_gm_inv_left: f64,
    /// Some next-scale step of an upper-triangle entry breaks EM rank
    /// monotonicity. Empty unless the study is enabled.
    pub rank_monotonicity_violation: Option<bool>,
    pub weight_monotonicity_violation: Option<bool>,
    /// EM vector is Pareto efficient. Empty unless the study is enabled.
    pub em_efficient: Option<bool>,
}

/// Aggregates of the non-dismissed trials in one CR bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSummary {
    pub schema_version: u32,
    pub bin: u64,
    pub cr_lo: f64,
    pub cr_hi: f64,
    pub count: u64,
    pub rank_reversal_freq: f64,
    /// Binomial standard error of `rank_reversal_freq`.
    pub rank_reversal_stderr: f64,
    pub top_reversal_freq: f64,
    pub full_reversal_freq: f64,
    pub mean_tau: f64,
    pub mean_euclidean: f64,
    pub rank_monotonicity_freq: Option<f64>,
    pub weight_monotonicity_freq: Option<f64>,
    pub em_inefficient_freq: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<BinSummary>,
}

/// The matrix of trial `trial`, with its Ishizaka-Lusti outcome when that
/// scheme is used.
pub fn generate(
    spec: &ExperimentSpec,
    trial: u64,
    ri: &RiTable,
) -> Result<(Pcm, Option<IshizakaOutcome>)> {
    let mut stream = Stream::new(spec.seed, spec.scheme.purpose(), trial);
    Ok(match spec.scheme {
        Scheme::SaatyUniform => (saaty_uniform_with(spec.n, &mut stream), None),
        Scheme::ConsistentPerturbed { delta } => {
            (consistent_perturbed_with(spec.n, delta, &mut stream), None)
        }
        Scheme::UnitIntervalRatio => (unit_interval_ratio_with(spec.n, &mut stream), None),
        Scheme::IshizakaLusti => {
            let outcome = ishizaka_lusti_with(spec.n, &mut stream, ri)?;
            (outcome.matrix().clone(), Some(outcome))
        }
    })
}

fn run_trial(spec: &ExperimentSpec, trial: u64, ri: &RiTable) -> Result<TrialRecord> {
    let cfg = EigenConfig::default();
    let (a, outcome) = generate(spec, trial, ri)?;
    let eig = right_eigenvector(&a, cfg)?;
    let cr = report_from_lambda(a.n(), eig.lambda_max, ri)?.cr;
    let right = eig.right.clone();
    let inv_left = WeightVector::new(
        eig.left.iter().map(|x| 1.0 / x).collect(),
        Normalization::Sum1,
    )?;
    let gm = geometric_mean_weights(&a);
    let rank_r = ranking_of(&right, DEFAULT_TIE_TOL);
    let rank_l = ranking_of(&inv_left, DEFAULT_TIE_TOL);
    let rank_gm = ranking_of(&gm, DEFAULT_TIE_TOL);
    let tau = kendall_tau(&rank_r, &rank_l)?;

    let (rank_mono, weight_mono) = if spec.monotonicity {
        let (r, w) = monotonicity_study(&a, &right, cfg)?;
        (Some(r), Some(w))
    } else {
        (None, None)
    };
    let em_efficient = spec
        .efficiency
        .then(|| test_efficiency(&a, &right).is_efficient());
    let (group, dismissed) = match outcome {
        Some(IshizakaOutcome::Grouped { group, .. }) => (Some(group), false),
        Some(IshizakaOutcome::Dismissed { .. }) => (None, true),
        None => (None, false),
    };
    Ok(TrialRecord {
        schema_version: SCHEMA_VERSION,
        trial,
        cr,
        group,
        dismissed,
        rank_reversal: rank_r != rank_l,
        top_reversal: rank_r.top_class() != rank_l.top_class(),
        full_reversal: rank_r.is_strict() && tau == -1.0,
        tau,
        euclidean: euclidean(&right, &inv_left)?,
        chebyshev: chebyshev(&right, &inv_left)?,
        max_ratio: max_ratio(&right, &inv_left)?,
        tau_gm_right: kendall_tau(&rank_gm, &rank_r)?,
        tau_gm_inv_left: kendall_tau(&rank_gm, &rank_l)?,
        rank_monotonicity_violation: rank_mono,
        weight_monotonicity_violation: weight_mono,
        em_efficient,
    })
}

/// Steps every upper-triangle entry to its scale successor and checks EM
/// rank and weight monotonicity for the favoured alternative.
fn monotonicity_study(a: &Pcm, w0: &WeightVector, cfg: EigenConfig) -> Result<(bool, bool)> {
    let n = a.n();
    let (mut rank, mut weight) = (false, false);
    for i in 0..n {
        for j in (i + 1)..n {
            let after = next_scale_step(a, i, j)?;
            let w1 = Method::Em.weights(&after, cfg)?;
            let (drops, decrease) = step_violations(w0, &w1, i, DEFAULT_TIE_TOL);
            rank |= !drops.is_empty();
            weight |= decrease;
        }
    }
    Ok((rank, weight))
}

/// Runs every trial and bins the results by CR.
pub fn run_experiment(spec: &ExperimentSpec, ri: &RiTable) -> Result<ExperimentOutput> {
    spec.validate()?;
    ri.get(spec.n)?;
    let records = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, t, ri))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&records, spec.cr_bin_width);
    Ok(ExperimentOutput { records, summary })
}

#[derive(Default)]
struct BinAcc {
    count: u64,
    rank: u64,
    top: u64,
    full: u64,
    tau: f64,
    euclidean: f64,
    rank_mono: Option<u64>,
    weight_mono: Option<u64>,
    inefficient: Option<u64>,
}

fn bump(slot: &mut Option<u64>, flag: Option<bool>) {
    if let Some(f) = flag {
        *slot.get_or_insert(0) += f as u64;
    }
}

/// Per-bin aggregates in increasing CR order. Bin `k` holds
/// `k * width <= CR < (k + 1) * width`; negative round-off is put in bin 0.
pub fn summarize(records: &[TrialRecord], width: f64) -> Vec<BinSummary> {
    let mut bins: BTreeMap<u64, BinAcc> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.dismissed) {
        let k = (r.cr.max(0.0) / width).floor() as u64;
        let acc = bins.entry(k).or_default();
        acc.count += 1;
        acc.rank += r.rank_reversal as u64;
        acc.top += r.top_reversal as u64;
        acc.full += r.full_reversal as u64;
        acc.tau += r.tau;
        acc.euclidean += r.euclidean;
        bump(&mut acc.rank_mono, r.rank_monotonicity_violation);
        bump(&mut acc.weight_mono, r.weight_monotonicity_violation);
        bump(&mut acc.inefficient, r.em_efficient.map(|e| !e));
    }
    bins.into_iter()
        .map(|(k, acc)| {
            let c = acc.count as f64;
            let p = acc.rank as f64 / c;
            BinSummary {
                schema_version: SCHEMA_VERSION,
                bin: k,
                cr_lo: k as f64 * width,
                cr_hi: (k + 1) as f64 * width,
                count: acc.count,
                rank_reversal_freq: p,
                rank_reversal_stderr: (p * (1.0 - p) / c).sqrt(),
                top_reversal_freq: acc.top as f64 / c,
                full_reversal_freq: acc.full as f64 / c,
                mean_tau: acc.tau / c,
                mean_euclidean: acc.euclidean / c,
                rank_monotonicity_freq: acc.rank_mono.map(|v| v as f64 / c),
                weight_monotonicity_freq: acc.weight_mono.map(|v| v as f64 / c),
                em_inefficient_freq: acc.inefficient.map(|v| v as f64 / c),
            }
        })
        .collect()
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

impl ExperimentOutput {
    pub fn records_csv(&self) -> Result<String> {
        to_csv(&self.records)
    }

    pub fn summary_csv(&self) -> Result<String> {
        to_csv(&self.summary)
    }
}
