//! Seeded random matrix generation for simulation studies.
//!
//! Four schemes are available:
//!
//! * [`saaty_uniform`]: upper-triangle entries i.i.d. uniform over the
//!   17-value Saaty scale.
//! * [`consistent_perturbed`]: weights uniform on `[1, 9]`, the consistent
//!   ratio matrix, then every entry `>= 1` perturbed by `eps ~ U[-delta, delta]`
//!   with the reflection rule of [`perturb_entry`].
//! * [`unit_interval_ratio`]: `a_ij = c_ij / c_ji` with `c ~ U(0, 1)`.
//! * [`ishizaka_lusti`]: a consistent matrix from `n - 1` Saaty-scale
//!   superdiagonal entries, randomly shifted by up to four scale positions,
//!   then grouped by CR in steps of 0.02 or dismissed once `CR >= 0.1`.
//!
//! Each `*_with` variant draws from a caller-supplied [`Stream`]; the plain
//! variants use stream index 0 of the scheme's purpose under `seed`.

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inconsistency::{consistency_ratio, RiTable};
use crate::matrix::{ratio_to_f64, Entry, Pcm, SaatyScale};
use crate::rng::{purpose, Stream};

/// Largest order accepted by [`ExperimentSpec`].
pub const MAX_EXPERIMENT_ORDER: usize = 25;

/// Noise half-width and seed of [`consistent_perturbed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub delta: f64,
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn new(delta: f64, seed: u64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "delta must be positive, got {delta}"
            )));
        }
        Ok(PerturbationSpec { delta, seed })
    }
}

/// Generation scheme of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scheme {
    SaatyUniform,
    ConsistentPerturbed { delta: f64 },
    UnitIntervalRatio,
    IshizakaLusti,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::SaatyUniform => "saaty_uniform",
            Scheme::ConsistentPerturbed { .. } => "consistent_perturbed",
            Scheme::UnitIntervalRatio => "unit_interval_ratio",
            Scheme::IshizakaLusti => "ishizaka_lusti",
        }
    }

    pub(crate) fn purpose(&self) -> u64 {
        match self {
            Scheme::SaatyUniform => purpose::SAATY_UNIFORM,
            Scheme::ConsistentPerturbed { .. } => purpose::CONSISTENT_PERTURBED,
            Scheme::UnitIntervalRatio => purpose::UNIT_INTERVAL,
            Scheme::IshizakaLusti => purpose::ISHIZAKA_LUSTI,
        }
    }
}

fn default_bin_width() -> f64 {
    0.01
}

/// Seeded Monte Carlo configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub scheme: Scheme,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Width of the CR bins in the summary.
    #[serde(default = "default_bin_width")]
    pub cr_bin_width: f64,
    /// Also run the next-scale-step monotonicity study on every matrix.
    #[serde(default)]
    pub monotonicity: bool,
    /// Also test Pareto efficiency of the eigenvector on every matrix.
    #[serde(default)]
    pub efficiency: bool,
}

impl ExperimentSpec {
    pub fn new(scheme: Scheme, n: usize, trials: u64, seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            scheme,
            n,
            trials,
            seed,
            cr_bin_width: default_bin_width(),
            monotonicity: false,
            efficiency: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if !(3..=MAX_EXPERIMENT_ORDER).contains(&self.n) {
            return Err(Error::InvalidArgument(format!(
                "n must be in 3..={MAX_EXPERIMENT_ORDER}, got {}",
                self.n
            )));
        }
        if !(self.cr_bin_width.is_finite() && self.cr_bin_width > 0.0) {
            return Err(Error::InvalidArgument(
                "cr_bin_width must be positive".into(),
            ));
        }
        if let Scheme::ConsistentPerturbed { delta } = self.scheme {
            PerturbationSpec::new(delta, self.seed)?;
        }
        if self.scheme == Scheme::IshizakaLusti && self.n > 7 {
            return Err(Error::InvalidArgument(
                "ishizaka_lusti is defined for 3 <= n <= 7".into(),
            ));
        }
        if self.monotonicity
            && matches!(
                self.scheme,
                Scheme::ConsistentPerturbed { .. } | Scheme::UnitIntervalRatio
            )
        {
            return Err(Error::InvalidArgument(
                "the monotonicity study needs Saaty-scale entries".into(),
            ));
        }
        Ok(())
    }
}

fn check_order(n: usize) -> Result<()> {
    if !(3..=crate::matrix::MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            max: crate::matrix::MAX_ORDER,
        });
    }
    Ok(())
}

/// Upper-triangle entries uniform over the Saaty scale; exact entries.
pub fn saaty_uniform(n: usize, seed: u64) -> Result<Pcm> {
    check_order(n)?;
    Ok(saaty_uniform_with(
        n,
        &mut Stream::new(seed, purpose::SAATY_UNIFORM, 0),
    ))
}

pub fn saaty_uniform_with(n: usize, stream: &mut Stream) -> Pcm {
    Pcm::from_upper_exact(n, |_, _| {
        SaatyScale::value(stream.below(SaatyScale::LEN as u64) as usize)
    })
}

/// The perturbation rule for an entry `a >= 1`:
/// `a + eps` if that is at least 1, otherwise `1 / (1 - eps - (a - 1))`.
/// The second branch has denominator `2 - a - eps > 1`, so the result is
/// always positive and finite.
pub fn perturb_entry(a: f64, eps: f64) -> f64 {
    if a + eps >= 1.0 {
        a + eps
    } else {
        1.0 / (1.0 - eps - (a - 1.0))
    }
}

pub fn consistent_perturbed(n: usize, delta: f64, seed: u64) -> Result<Pcm> {
    check_order(n)?;
    PerturbationSpec::new(delta, seed)?;
    Ok(consistent_perturbed_with(
        n,
        delta,
        &mut Stream::new(seed, purpose::CONSISTENT_PERTURBED, 0),
    ))
}

pub fn consistent_perturbed_with(n: usize, delta: f64, stream: &mut Stream) -> Pcm {
    let w: Vec<f64> = (0..n).map(|_| stream.uniform_range(1.0, 9.0)).collect();
    let mut upper = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let a = w[i] / w[j];
            // perturb whichever of a_ij, a_ji is >= 1
            let big = if a >= 1.0 { a } else { 1.0 / a };
            let perturbed = perturb_entry(big, stream.uniform_range(-delta, delta));
            upper[i * n + j] = if a >= 1.0 { perturbed } else { 1.0 / perturbed };
        }
    }
    Pcm::from_upper_float(n, |i, j| upper[i * n + j])
}

/// `a_ij = c_ij / c_ji` with independent `U(0, 1)` draws (zeros resampled).
pub fn unit_interval_ratio(n: usize, seed: u64) -> Result<Pcm> {
    check_order(n)?;
    Ok(unit_interval_ratio_with(
        n,
        &mut Stream::new(seed, purpose::UNIT_INTERVAL, 0),
    ))
}

pub fn unit_interval_ratio_with(n: usize, stream: &mut Stream) -> Pcm {
    Pcm::from_upper_float(n, |_, _| {
        let c_ij = stream.uniform_open();
        let c_ji = stream.uniform_open();
        c_ij / c_ji
    })
}

/// Result of one [`ishizaka_lusti`] draw.
#[derive(Debug, Clone, PartialEq)]
pub enum IshizakaOutcome {
    /// `0.02 (group - 1) <= cr < 0.02 group`, `group` in `1..=5`.
    Grouped {
        matrix: Pcm,
        group: u8,
        cr: f64,
    },
    Dismissed {
        matrix: Pcm,
        cr: f64,
    },
}

impl IshizakaOutcome {
    pub fn matrix(&self) -> &Pcm {
        match self {
            IshizakaOutcome::Grouped { matrix, .. } | IshizakaOutcome::Dismissed { matrix, .. } => {
                matrix
            }
        }
    }

    pub fn cr(&self) -> f64 {
        match self {
            IshizakaOutcome::Grouped { cr, .. } | IshizakaOutcome::Dismissed { cr, .. } => *cr,
        }
    }
}

/// Scale positions reachable by one shift: distance 1 to 4, truncated at
/// the ends of the scale.
pub fn shift_candidates(position: usize) -> Vec<usize> {
    let lo = position.saturating_sub(4);
    let hi = (position + 4).min(SaatyScale::LEN - 1);
    (lo..=hi).filter(|&k| k != position).collect()
}

/// Scale position closest to `value` in log distance.
fn nearest_position(value: Rational64) -> usize {
    if let Some(k) = SaatyScale::position(value) {
        return k;
    }
    let x = ratio_to_f64(value).ln();
    (0..SaatyScale::LEN)
        .min_by(|&a, &b| {
            let da = (ratio_to_f64(SaatyScale::value(a)).ln() - x).abs();
            let db = (ratio_to_f64(SaatyScale::value(b)).ln() - x).abs();
            da.total_cmp(&db)
        })
        .expect("scale is nonempty")
}

/// One shift draw: each candidate with probability 1/9, the current value
/// keeps the rest.
pub fn shift_entry(value: Rational64, stream: &mut Stream) -> Rational64 {
    let candidates = shift_candidates(nearest_position(value));
    let u = stream.below(9) as usize;
    match candidates.get(u) {
        Some(&k) => SaatyScale::value(k),
        None => value,
    }
}

pub fn ishizaka_lusti(n: usize, seed: u64, ri: &RiTable) -> Result<IshizakaOutcome> {
    ishizaka_lusti_with(n, &mut Stream::new(seed, purpose::ISHIZAKA_LUSTI, 0), ri)
}

pub fn ishizaka_lusti_with(n: usize, stream: &mut Stream, ri: &RiTable) -> Result<IshizakaOutcome> {
    if !(3..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "ishizaka_lusti is defined for 3 <= n <= 7, got {n}"
        )));
    }
    let chain: Vec<Rational64> = (0..n - 1)
        .map(|_| SaatyScale::value(stream.below(SaatyScale::LEN as u64) as usize))
        .collect();
    let mut upper = vec![Rational64::one(); n * n];
    for i in 0..n {
        let mut acc = Rational64::one();
        for j in (i + 1)..n {
            acc *= chain[j - 1];
            upper[i * n + j] = acc;
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let count = stream.below(pairs.len() as u64 + 1);
    for _ in 0..count {
        let (i, j) = pairs[stream.below(pairs.len() as u64) as usize];
        upper[i * n + j] = shift_entry(upper[i * n + j], stream);
    }
    let matrix = Pcm::from_upper_exact(n, |i, j| upper[i * n + j]);
    let cr = consistency_ratio(&matrix, ri)?.cr;
    if cr >= 0.1 {
        return Ok(IshizakaOutcome::Dismissed { matrix, cr });
    }
    let group = ((cr / 0.02).floor() as u8 + 1).min(5);
    Ok(IshizakaOutcome::Grouped { matrix, group, cr })
}

/// Replaces `a_ij` (`i != j`) by its successor on the Saaty scale extended by
/// 10, updating `a_ji` reciprocally.
pub fn next_scale_step(a: &Pcm, i: usize, j: usize) -> Result<Pcm> {
    let n = a.n();
    if i == j || i >= n || j >= n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let current = match a.exact_entry(i, j) {
        Some(r) => Some(r),
        None => SaatyScale::position_f64(a.get(i, j)).map(SaatyScale::value),
    };
    let next = current
        .and_then(SaatyScale::successor)
        .ok_or_else(|| Error::NotOnScale {
            i,
            j,
            value: a
                .exact_entry(i, j)
                .map(|r| r.to_string())
                .unwrap_or_else(|| a.get(i, j).to_string()),
        })?;
    a.with_entry(i, j, Entry::Exact(next))
}
