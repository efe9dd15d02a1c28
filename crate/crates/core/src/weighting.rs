//! Priority vectors: right and left principal eigenvectors, inverse-left
//! weights, the row geometric mean, and the geometric mean of the right and
//! inverse-left vectors.
//!
//! Eigenvectors are computed by power iteration with sum normalization after
//! every step, starting from the all-ones vector. Positive matrices have a
//! simple dominant eigenvalue with a positive eigenvector, so the iteration
//! converges; the rate is governed by the ratio of the two largest eigenvalue
//! moduli.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Pcm;
use crate::metrics::Ranking;

/// Default convergence tolerance of the power iteration.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
/// Default iteration cap of the power iteration.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Default relative tie tolerance of [`ranking_of`].
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    #[default]
    Sum1,
    Sum100,
    None,
}

impl Normalization {
    fn target(self) -> Option<f64> {
        match self {
            Normalization::Sum1 => Some(1.0),
            Normalization::Sum100 => Some(100.0),
            Normalization::None => None,
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum1" => Ok(Normalization::Sum1),
            "sum100" => Ok(Normalization::Sum100),
            "none" => Ok(Normalization::None),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization {other:?}"
            ))),
        }
    }
}

/// A positive priority vector with its declared normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    weights: Vec<f64>,
    normalization: Normalization,
}

impl WeightVector {
    /// Wraps `weights`, rescaling them to the requested normalization.
    pub fn new(weights: Vec<f64>, normalization: Normalization) -> Result<WeightVector> {
        if let Some(index) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::NonPositiveWeight { index });
        }
        let mut w = WeightVector {
            weights,
            normalization: Normalization::None,
        };
        w.rescale(normalization);
        Ok(w)
    }

    fn rescale(&mut self, normalization: Normalization) {
        if let Some(target) = normalization.target() {
            let total: f64 = self.weights.iter().sum();
            let factor = target / total;
            for w in &mut self.weights {
                *w *= factor;
            }
        }
        self.normalization = normalization;
    }

    pub fn normalized(&self, normalization: Normalization) -> WeightVector {
        let mut w = self.clone();
        w.rescale(normalization);
        w
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.weights.iter().copied()
    }

    /// Sum-1 share of alternative `i`.
    pub fn share(&self, i: usize) -> f64 {
        self.weights[i] / self.weights.iter().sum::<f64>()
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.weights[i]
    }
}

/// Power-iteration settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            tol: DEFAULT_EIGEN_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Dominant eigenvalue with the right and left Perron vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub lambda_max: f64,
    pub right: WeightVector,
    pub left: WeightVector,
    /// Iterations used by the right and left runs together.
    pub iterations: usize,
    /// Larger of the two runs' `|A w - lambda w|_inf / |w|_inf`.
    pub residual: f64,
}

struct PowerRun {
    vector: Vec<f64>,
    lambda: f64,
    iterations: usize,
    residual: f64,
}

fn residual_of(a: &Pcm, transposed: bool, x: &[f64], scratch: &mut [f64]) -> (f64, f64) {
    apply(a, transposed, x, scratch);
    let lambda = scratch.iter().sum::<f64>() / x.iter().sum::<f64>();
    let norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let res = scratch
        .iter()
        .zip(x)
        .map(|(ax, v)| (ax - lambda * v).abs())
        .fold(0.0, f64::max);
    (lambda, res / norm)
}

#[inline]
fn apply(a: &Pcm, transposed: bool, x: &[f64], out: &mut [f64]) {
    if transposed {
        let n = a.n();
        out.iter_mut().for_each(|o| *o = 0.0);
        for (i, xi) in x.iter().enumerate().take(n) {
            for (o, aij) in out.iter_mut().zip(a.row(i)) {
                *o += aij * xi;
            }
        }
    } else {
        a.mul_vec(x, out);
    }
}

/// Power iteration on `A` (or `A^T`) from a positive start vector.
fn power_iteration(a: &Pcm, transposed: bool, start: &[f64], cfg: EigenConfig) -> Result<PowerRun> {
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            cfg.tol
        )));
    }
    let n = a.n();
    let total: f64 = start.iter().sum();
    let mut x: Vec<f64> = start.iter().map(|v| v / total).collect();
    let mut y = vec![0.0; n];
    let mut best_residual = f64::INFINITY;
    let mut best = x.clone();
    for iteration in 1..=cfg.max_iter {
        apply(a, transposed, &x, &mut y);
        let s: f64 = y.iter().sum();
        let mut delta: f64 = 0.0;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi /= s;
            delta = delta.max((*yi - xi).abs());
        }
        std::mem::swap(&mut x, &mut y);
        if delta <= cfg.tol {
            let (lambda, residual) = residual_of(a, transposed, &x, &mut y);
            if residual <= cfg.tol * lambda.max(1.0) {
                return Ok(PowerRun {
                    vector: x,
                    lambda,
                    iterations: iteration,
                    residual,
                });
            }
            if residual < best_residual {
                best_residual = residual;
                best.copy_from_slice(&x);
            }
        }
    }
    let (_, residual) = residual_of(a, transposed, &x, &mut y);
    if residual < best_residual {
        best_residual = residual;
        best.copy_from_slice(&x);
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iter,
        residual: best_residual,
        best,
    })
}

/// Right Perron vector (sum 1), together with the left one and `lambda_max`.
pub fn right_eigenvector(a: &Pcm, cfg: EigenConfig) -> Result<EigenResult> {
    right_eigenvector_from(a, &vec![1.0; a.n()], cfg)
}

/// As [`right_eigenvector`] but starting the iteration from `start`.
pub fn right_eigenvector_from(a: &Pcm, start: &[f64], cfg: EigenConfig) -> Result<EigenResult> {
    if start.len() != a.n() {
        return Err(Error::LengthMismatch {
            left: a.n(),
            right: start.len(),
        });
    }
    if let Some(index) = start.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::NonPositiveWeight { index });
    }
    let right = power_iteration(a, false, start, cfg)?;
    let left = power_iteration(a, true, start, cfg)?;
    Ok(EigenResult {
        lambda_max: right.lambda,
        right: WeightVector::new(right.vector, Normalization::Sum1)?,
        left: WeightVector::new(left.vector, Normalization::Sum1)?,
        iterations: right.iterations + left.iterations,
        residual: right.residual.max(left.residual),
    })
}

/// Dominant eigenvalue and right vector only; the left run is skipped.
pub fn principal(a: &Pcm, cfg: EigenConfig) -> Result<(f64, WeightVector)> {
    let run = power_iteration(a, false, &vec![1.0; a.n()], cfg)?;
    Ok((
        run.lambda,
        WeightVector::new(run.vector, Normalization::Sum1)?,
    ))
}

/// `lambda_max(A)` by power iteration.
pub fn lambda_max(a: &Pcm, cfg: EigenConfig) -> Result<f64> {
    power_iteration(a, false, &vec![1.0; a.n()], cfg).map(|r| r.lambda)
}

/// Left Perron vector `w^L A = lambda w^L`, i.e. the right vector of `A^T`.
pub fn left_eigenvector(a: &Pcm, cfg: EigenConfig) -> Result<WeightVector> {
    let run = power_iteration(a, true, &vec![1.0; a.n()], cfg)?;
    WeightVector::new(run.vector, Normalization::Sum1)
}

fn reciprocal(w: &WeightVector) -> Result<WeightVector> {
    WeightVector::new(w.iter().map(|x| 1.0 / x).collect(), Normalization::Sum1)
}

/// Entrywise reciprocal of the left eigenvector, renormalized.
pub fn inverse_left_weights(a: &Pcm, cfg: EigenConfig) -> Result<WeightVector> {
    reciprocal(&left_eigenvector(a, cfg)?)
}

/// Row geometric mean `w_i ∝ (prod_j a_ij)^(1/n)`, computed in log space.
pub fn geometric_mean_weights(a: &Pcm) -> WeightVector {
    let n = a.n();
    let logs: Vec<f64> = (0..n)
        .map(|i| a.row(i).iter().map(|x| x.ln()).sum::<f64>() / n as f64)
        .collect();
    let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w = logs.iter().map(|l| (l - shift).exp()).collect();
    WeightVector::new(w, Normalization::Sum1).expect("exp of finite logs is positive")
}

/// `sqrt(w^R_i * w^{-L}_i)`, renormalized.
pub fn rl_geometric_mean(a: &Pcm, cfg: EigenConfig) -> Result<WeightVector> {
    let eig = right_eigenvector(a, cfg)?;
    rl_from_eigen(&eig)
}

pub(crate) fn rl_from_eigen(eig: &EigenResult) -> Result<WeightVector> {
    let inv_left = reciprocal(&eig.left)?;
    WeightVector::new(
        eig.right
            .iter()
            .zip(inv_left.iter())
            .map(|(r, l)| (r * l).sqrt())
            .collect(),
        Normalization::Sum1,
    )
}

/// A weighting method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Right principal eigenvector.
    Em,
    /// Row geometric mean.
    Gm,
    /// Entrywise inverse of the left principal eigenvector.
    InvLeft,
    /// Geometric mean of the right and inverse-left vectors.
    Rlgm,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Em, Method::Gm, Method::InvLeft, Method::Rlgm];

    pub fn weights(self, a: &Pcm, cfg: EigenConfig) -> Result<WeightVector> {
        match self {
            Method::Em => principal(a, cfg).map(|(_, w)| w),
            Method::Gm => Ok(geometric_mean_weights(a)),
            Method::InvLeft => inverse_left_weights(a, cfg),
            Method::Rlgm => rl_geometric_mean(a, cfg),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Em => "em",
            Method::Gm => "gm",
            Method::InvLeft => "invleft",
            Method::Rlgm => "rlgm",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "em" => Ok(Method::Em),
            "gm" => Ok(Method::Gm),
            "invleft" => Ok(Method::InvLeft),
            "rlgm" => Ok(Method::Rlgm),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Orders alternatives by weight. Sorted neighbours whose relative gap
/// `(w_hi - w_lo) / w_hi` is at most `tie_tol` share a tie class; ties are
/// chained, so a class may span more than `tie_tol` in total.
pub fn ranking_of(w: &WeightVector, tie_tol: f64) -> Ranking {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&i, &j| w[j].total_cmp(&w[i]).then(i.cmp(&j)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<f64> = None;
    for i in order {
        let x = w[i];
        match (prev, classes.last_mut()) {
            (Some(p), Some(class)) if (p - x) <= tie_tol * p => class.push(i),
            _ => classes.push(vec![i]),
        }
        prev = Some(x);
    }
    Ranking::from_classes(classes).expect("indices partition 0..n")
}
