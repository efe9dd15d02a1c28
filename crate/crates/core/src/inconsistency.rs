//! Consistency index, random index estimation and consistency ratio.
//!
//! `CI = (lambda_max - n) / (n - 1)`, `RI_n` is the mean CI of random
//! matrices whose upper-triangle entries are drawn uniformly from the
//! 17-value Saaty scale, and `CR = CI / RI_n`. A matrix is acceptable when
//! `CR < 0.1`.
//!
//! [`RiTable::pinned`] holds estimates frozen from
//! [`estimate_random_index`] with [`PINNED_RI_SEED`] and [`PINNED_RI_TRIALS`];
//! the regression tests re-run the estimator and compare bit for bit.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::saaty_uniform_with;
use crate::matrix::Pcm;
use crate::rng::{purpose, Stream};
use crate::weighting::{lambda_max, EigenConfig};

/// Acceptability threshold on CR.
pub const CR_THRESHOLD: f64 = 0.1;

/// CI magnitudes below this are reported as exactly 0.
pub const CI_ZERO_TOL: f64 = 1e-10;

pub const PINNED_RI_SEED: u64 = 7919;
pub const PINNED_RI_TRIALS: u64 = 1_000_000;

/// `(n, RI_n, standard error)` estimated with [`PINNED_RI_SEED`] at
/// [`PINNED_RI_TRIALS`] trials per order.
const PINNED_RI: &[(usize, f64, f64)] = &[
    (3, 0.5240508746216522, 0.0006954817795110097),
    (4, 0.8828091570299805, 0.0006287087047763525),
    (5, 1.108812084974293, 0.0005088972924806927),
    (6, 1.248335790234615, 0.0004074233115076068),
    (7, 1.3405058162955645, 0.00033252647803533786),
    (8, 1.403897977122017, 0.00027831112460060745),
    (9, 1.4508418021100686, 0.00023863793352097814),
    (10, 1.4859720237299476, 0.00020873325477488937),
    (11, 1.5136554373610582, 0.00018520998020284568),
    (12, 1.5365249329982913, 0.00016625951912022544),
    (13, 1.5548763593949815, 0.0001510822974597748),
    (14, 1.5705312372421314, 0.00013849341323575947),
    (15, 1.5840382179301862, 0.00012764748745228426),
    (16, 1.5953489592877304, 0.00011839736773619524),
    (17, 1.605436144476417, 0.0001102521069129616),
    (18, 1.6141205320587924, 0.00010328323121466781),
    (19, 1.6220078218668288, 9.720235832397993e-5),
    (20, 1.6291522081494632, 9.177927327923906e-5),
    (21, 1.6355219977360476, 8.688845838547625e-5),
    (22, 1.6411879914444019, 8.252581533154323e-5),
    (23, 1.6462777716608996, 7.850304139786653e-5),
    (24, 1.6509699299233778, 7.486206603603032e-5),
    (25, 1.6554130181034756, 7.151169083934301e-5),
];

const CHUNK: u64 = 4096;

/// `(lambda_max - n) / (n - 1)`. Order-2 matrices are always consistent and
/// give exactly 0.
pub fn consistency_index(a: &Pcm) -> Result<f64> {
    consistency_index_with(a, EigenConfig::default())
}

pub fn consistency_index_with(a: &Pcm, cfg: EigenConfig) -> Result<f64> {
    let n = a.n();
    if n == 2 {
        return Ok(0.0);
    }
    let lambda = lambda_max(a, cfg)?;
    Ok(ci_from_lambda(lambda, n))
}

pub(crate) fn ci_from_lambda(lambda: f64, n: usize) -> f64 {
    let ci = (lambda - n as f64) / (n as f64 - 1.0);
    if ci.abs() <= CI_ZERO_TOL {
        0.0
    } else {
        ci
    }
}

/// One random index estimate; also the record format of the RI cache file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiEstimate {
    pub n: usize,
    pub ri: f64,
    pub trials: u64,
    /// Decimal seed, kept as a string so 64-bit values survive JSON readers
    /// that use doubles.
    #[serde(with = "seed_string")]
    pub seed: u64,
    pub stderr: f64,
}

mod seed_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&seed.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Mean CI over `trials` matrices drawn by `generate`, with its standard
/// error. Trial `t` receives the stream `(seed, purpose, t)`; partial sums are
/// formed over fixed chunks and combined pairwise so the result does not
/// depend on thread scheduling.
pub fn mean_ci<G>(trials: u64, seed: u64, stream_purpose: u64, generate: G) -> Result<(f64, f64)>
where
    G: Fn(&mut Stream) -> Pcm + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let cfg = EigenConfig::default();
    let chunks = trials.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for t in (c * CHUNK)..((c + 1) * CHUNK).min(trials) {
                let mut stream = Stream::new(seed, stream_purpose, t);
                let a = generate(&mut stream);
                let ci = consistency_index_with(&a, cfg)?;
                sum += ci;
                sum_sq += ci * ci;
            }
            Ok((sum, sum_sq))
        })
        .collect::<Result<Vec<_>>>()?;
    let (sum, sum_sq) = pairwise_sum(&partials);
    let count = trials as f64;
    let mean = sum / count;
    let var = if trials > 1 {
        ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok((mean, (var / count).sqrt()))
}

fn pairwise_sum(parts: &[(f64, f64)]) -> (f64, f64) {
    match parts.len() {
        0 => (0.0, 0.0),
        1 => parts[0],
        len => {
            let (l, r) = parts.split_at(len / 2);
            let a = pairwise_sum(l);
            let b = pairwise_sum(r);
            (a.0 + b.0, a.1 + b.1)
        }
    }
}

fn ri_purpose(n: usize) -> u64 {
    purpose::RANDOM_INDEX.wrapping_add((n as u64) << 40)
}

/// Monte Carlo estimate of `RI_n` over Saaty-scale uniform matrices.
pub fn estimate_random_index(n: usize, trials: u64, seed: u64) -> Result<RiEstimate> {
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let (ri, stderr) = mean_ci(trials, seed, ri_purpose(n), |s| saaty_uniform_with(n, s))?;
    Ok(RiEstimate {
        n,
        ri,
        trials,
        seed,
        stderr,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RiSource {
    Estimated { trials: u64, seed: String },
    UserSupplied,
}

/// Random index values by matrix order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RiTable {
    entries: BTreeMap<usize, (f64, RiSource)>,
}

impl RiTable {
    /// The repository's frozen estimates.
    pub fn pinned() -> RiTable {
        let mut table = RiTable::default();
        for &(n, ri, _) in PINNED_RI {
            table.entries.insert(
                n,
                (
                    ri,
                    RiSource::Estimated {
                        trials: PINNED_RI_TRIALS,
                        seed: PINNED_RI_SEED.to_string(),
                    },
                ),
            );
        }
        table
    }

    /// Pinned standard errors, keyed by order.
    pub fn pinned_stderr(n: usize) -> Option<f64> {
        PINNED_RI.iter().find(|e| e.0 == n).map(|e| e.2)
    }

    /// A table of user-supplied values.
    pub fn user<I: IntoIterator<Item = (usize, f64)>>(values: I) -> Result<RiTable> {
        let mut table = RiTable::default();
        for (n, ri) in values {
            if !(ri.is_finite() && ri > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "random index for n = {n} must be positive, got {ri}"
                )));
            }
            table.entries.insert(n, (ri, RiSource::UserSupplied));
        }
        Ok(table)
    }

    pub fn from_estimates<'a, I: IntoIterator<Item = &'a RiEstimate>>(estimates: I) -> RiTable {
        let mut table = RiTable::default();
        for e in estimates {
            table.entries.insert(
                e.n,
                (
                    e.ri,
                    RiSource::Estimated {
                        trials: e.trials,
                        seed: e.seed.to_string(),
                    },
                ),
            );
        }
        table
    }

    /// Reads a cache file: either one [`RiEstimate`] object or an array.
    pub fn from_cache_json(text: &str) -> Result<RiTable> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}", e.line()),
            message: e.to_string(),
        })?;
        let estimates: Vec<RiEstimate> = if value.is_array() {
            serde_json::from_value(value)
        } else {
            serde_json::from_value(value).map(|e| vec![e])
        }
        .map_err(|e| Error::Parse {
            location: "ri cache".into(),
            message: e.to_string(),
        })?;
        Ok(RiTable::from_estimates(&estimates))
    }

    /// This table with every order of `other` replacing or adding to it.
    pub fn overlay(mut self, other: RiTable) -> RiTable {
        self.entries.extend(other.entries);
        self
    }

    pub fn get(&self, n: usize) -> Result<f64> {
        self.entries
            .get(&n)
            .map(|e| e.0)
            .ok_or(Error::MissingRi { n })
    }

    pub fn source(&self, n: usize) -> Option<&RiSource> {
        self.entries.get(&n).map(|e| &e.1)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InconsistencyReport {
    pub n: usize,
    pub lambda_max: f64,
    pub ci: f64,
    pub ri: f64,
    pub ri_source: RiSource,
    pub cr: f64,
    pub acceptable: bool,
}

/// Full CI / RI / CR report for `a`.
pub fn consistency_ratio(a: &Pcm, ri: &RiTable) -> Result<InconsistencyReport> {
    consistency_ratio_with(a, ri, EigenConfig::default())
}

pub fn consistency_ratio_with(
    a: &Pcm,
    ri: &RiTable,
    cfg: EigenConfig,
) -> Result<InconsistencyReport> {
    let n = a.n();
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    let lambda = lambda_max(a, cfg)?;
    report_from_lambda(n, lambda, ri)
}

pub(crate) fn report_from_lambda(
    n: usize,
    lambda: f64,
    ri: &RiTable,
) -> Result<InconsistencyReport> {
    let ri_value = ri.get(n)?;
    let ci = ci_from_lambda(lambda, n);
    let cr = ci / ri_value;
    Ok(InconsistencyReport {
        n,
        lambda_max: lambda,
        ci,
        ri: ri_value,
        ri_source: ri.source(n).cloned().unwrap_or(RiSource::UserSupplied),
        cr,
        acceptable: cr < CR_THRESHOLD,
    })
}
