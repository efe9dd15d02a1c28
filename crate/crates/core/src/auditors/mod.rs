//! Property auditors for priority derivation methods.
//!
//! Each auditor takes raw inputs, derives weights, and returns an
//! [`AuditReport`] whose witnesses can be re-checked against the defining
//! conditions: right-left asymmetry, group coherence for choice, scale
//! invariance, rank and weight monotonicity, and Pareto efficiency.

mod asymmetry;
mod efficiency;
mod group;
mod monotonic;
mod scale;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inconsistency::{consistency_ratio_with, RiTable};
use crate::matrix::Pcm;
use crate::weighting::{EigenConfig, Method, Normalization, DEFAULT_TIE_TOL};

pub use asymmetry::audit_asymmetry;
pub use efficiency::{
    audit_efficiency, check_dominance, check_dominance_with, efficiency_graph, test_efficiency,
    DominanceCertificate, Efficiency, NotDominating, ARC_TOL, STRICT_TOL, WEAK_TOL,
};
pub use group::audit_group_coherence;
pub use monotonic::{
    audit_all_steps, audit_monotonicity, audit_monotonicity_between, step_violations, Step,
    WEIGHT_DECREASE_TOL,
};
pub use scale::{
    audit_scale_invariance, default_alpha_grid, scan_family, FamilyScan, RankChange,
    BISECTION_WIDTH,
};

/// The five audited properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Asymmetry,
    Group,
    Scale,
    Monotonic,
    Efficiency,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Asymmetry,
        Property::Group,
        Property::Scale,
        Property::Monotonic,
        Property::Efficiency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Asymmetry => "asymmetry",
            Property::Group => "group",
            Property::Scale => "scale",
            Property::Monotonic => "monotonic",
            Property::Efficiency => "efficiency",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Structured evidence for a verdict. Alternatives are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The two weightings order `i` and `j` differently.
    RankReversal {
        i: usize,
        j: usize,
    },
    /// Different top tie classes.
    TopChange {
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    /// The ranking changes between `alpha_lo` and `alpha_hi`.
    ScaleChange {
        alpha_lo: f64,
        alpha_hi: f64,
        before: String,
        after: String,
    },
    /// Raising `a_ij` made `i` strictly worse than `k`, which it used to
    /// match or beat.
    RankDrop {
        i: usize,
        j: usize,
        k: usize,
    },
    /// Raising `a_ij` decreased the normalized weight of `i`.
    WeightDecrease {
        i: usize,
        j: usize,
        before: f64,
        after: f64,
    },
    Dominance(DominanceCertificate),
}

/// Outcome of one auditor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub property: Property,
    pub verdict: Verdict,
    pub method: Method,
    pub witnesses: Vec<Witness>,
    /// CR of the audited matrix (the aggregate for group audits), when the
    /// random index table covers its order.
    pub cr: Option<f64>,
    /// Numeric evidence such as distances and weights.
    pub metrics: BTreeMap<String, f64>,
    pub flags: BTreeMap<String, bool>,
    /// Rankings in display form, keyed by what produced them.
    pub rankings: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub(crate) fn new(property: Property, method: Method) -> AuditReport {
        AuditReport {
            property,
            verdict: Verdict::Satisfied,
            method,
            witnesses: Vec::new(),
            cr: None,
            metrics: BTreeMap::new(),
            flags: BTreeMap::new(),
            rankings: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Violated iff there is a witness; otherwise inconclusive when some
    /// step failed (recorded in `notes`), satisfied else.
    pub(crate) fn conclude(mut self) -> AuditReport {
        self.verdict = if !self.witnesses.is_empty() {
            Verdict::Violated
        } else if self.notes.is_empty() {
            Verdict::Satisfied
        } else {
            Verdict::Inconclusive
        };
        self
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// Shared auditor settings.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub eigen: EigenConfig,
    /// Relative gap below which two weights tie.
    pub tie_tol: f64,
    /// Normalization of reported weights and distances.
    pub normalization: Normalization,
    pub ri: RiTable,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            eigen: EigenConfig::default(),
            tie_tol: DEFAULT_TIE_TOL,
            normalization: Normalization::Sum1,
            ri: RiTable::pinned(),
        }
    }
}

impl AuditConfig {
    pub(crate) fn context_cr(&self, a: &Pcm) -> Option<f64> {
        if a.n() < 3 || self.ri.get(a.n()).is_err() {
            return None;
        }
        consistency_ratio_with(a, &self.ri, self.eigen)
            .ok()
            .map(|r| r.cr)
    }
}

/// Runs one single-matrix auditor with default parameters: the default α
/// grid for scale invariance and every next-scale step for monotonicity.
/// Group coherence needs several matrices and is rejected here; use
/// [`audit_group_coherence`].
pub fn audit_single(
    a: &Pcm,
    property: Property,
    method: Method,
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    match property {
        Property::Asymmetry => audit_asymmetry(a, cfg),
        Property::Group => Err(Error::InvalidArgument(
            "group coherence needs at least two matrices".into(),
        )),
        Property::Scale => audit_scale_invariance(a, &default_alpha_grid(), method, cfg),
        Property::Monotonic => audit_all_steps(a, method, cfg),
        Property::Efficiency => audit_efficiency(a, method, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
            assert_eq!(serde_json::to_value(p).unwrap(), p.name());
        }
        assert!("all".parse::<Property>().is_err());
    }

    #[test]
    fn conclude_sets_verdict() {
        let r = AuditReport::new(Property::Scale, Method::Em).conclude();
        assert_eq!(r.verdict, Verdict::Satisfied);
        let mut r = AuditReport::new(Property::Scale, Method::Em);
        r.notes.push("no convergence at alpha = 3".into());
        assert_eq!(r.conclude().verdict, Verdict::Inconclusive);
        let mut r = AuditReport::new(Property::Scale, Method::Em);
        r.witnesses.push(Witness::RankReversal { i: 0, j: 1 });
        r.notes.push("no convergence at alpha = 3".into());
        assert_eq!(r.conclude().verdict, Verdict::Violated);
    }
}
