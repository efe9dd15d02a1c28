//! Scale invariance: the ranking must not depend on the exponent α of the
//! entrywise power `A^{∘α}`.

use super::{AuditConfig, AuditReport, Property, Witness};
use crate::error::{Error, Result};
use crate::matrix::Pcm;
use crate::metrics::Ranking;
use crate::weighting::{ranking_of, Method};

/// Width at which bisection of a ranking change stops.
pub const BISECTION_WIDTH: f64 = 1e-3;

/// `0.1, 0.2, ..., 5.0`.
pub fn default_alpha_grid() -> Vec<f64> {
    (1..=50).map(|k| k as f64 / 10.0).collect()
}

/// A located ranking change in a one-parameter family.
#[derive(Debug, Clone, PartialEq)]
pub struct RankChange {
    pub lo: f64,
    pub hi: f64,
    pub before: Ranking,
    pub after: Ranking,
}

/// Scan of a one-parameter family over a grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FamilyScan {
    /// Ranking at every grid point that could be evaluated.
    pub rankings: Vec<(f64, Ranking)>,
    pub changes: Vec<RankChange>,
    /// Parameter values at which evaluation failed, with the reason.
    pub failures: Vec<(f64, String)>,
}

/// Ranks `family(t)` over `grid` and brackets every change between
/// consecutive evaluable grid points by bisection down to `width`.
pub fn scan_family<F>(
    family: F,
    grid: &[f64],
    method: Method,
    cfg: &AuditConfig,
    width: f64,
) -> FamilyScan
where
    F: Fn(f64) -> Result<Pcm>,
{
    let rank_at = |t: f64| -> Result<Ranking> {
        let a = family(t)?;
        Ok(ranking_of(&method.weights(&a, cfg.eigen)?, cfg.tie_tol))
    };
    let mut scan = FamilyScan::default();
    for &t in grid {
        match rank_at(t) {
            Ok(r) => scan.rankings.push((t, r)),
            Err(e) => scan.failures.push((t, e.to_string())),
        }
    }
    for pair in scan.rankings.windows(2) {
        let (mut lo, ref before) = pair[0];
        let (mut hi, ref grid_after) = pair[1];
        if before == grid_after {
            continue;
        }
        let mut after = grid_after.clone();
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            match rank_at(mid) {
                Ok(r) if &r == before => lo = mid,
                Ok(r) => {
                    hi = mid;
                    after = r;
                }
                Err(e) => {
                    scan.failures.push((mid, e.to_string()));
                    break;
                }
            }
        }
        scan.changes.push(RankChange {
            lo,
            hi,
            before: before.clone(),
            after,
        });
    }
    scan
}

/// Violated iff the ranking of `A^{∘α}` differs between two grid points;
/// every change is bracketed to width [`BISECTION_WIDTH`]. Grid points at
/// which weighting fails are recorded in `notes` and make an otherwise clean
/// audit inconclusive.
pub fn audit_scale_invariance(
    a: &Pcm,
    alpha_grid: &[f64],
    method: Method,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidArgument("alpha grid is empty".into()));
    }
    if let Some(&bad) = alpha_grid.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::NonPositiveExponent(bad));
    }
    if alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "alpha grid must be strictly increasing".into(),
        ));
    }
    let scan = scan_family(
        |t| a.hadamard_power(t),
        alpha_grid,
        method,
        cfg,
        BISECTION_WIDTH,
    );
    let mut report = AuditReport::new(Property::Scale, method);
    report.cr = cfg.context_cr(a);
    let mut last: Option<&Ranking> = None;
    for (alpha, r) in &scan.rankings {
        if last != Some(r) {
            report
                .rankings
                .insert(format!("alpha={alpha}"), r.to_string());
        }
        last = Some(r);
    }
    for change in &scan.changes {
        report.witnesses.push(Witness::ScaleChange {
            alpha_lo: change.lo,
            alpha_hi: change.hi,
            before: change.before.to_string(),
            after: change.after.to_string(),
        });
    }
    for (alpha, reason) in &scan.failures {
        report.notes.push(format!("alpha = {alpha}: {reason}"));
    }
    Ok(report.conclude())
}
