//! Right eigenvector versus inverse left eigenvector.

use super::{AuditConfig, AuditReport, Property, Witness};
use crate::error::Result;
use crate::matrix::Pcm;
use crate::metrics::{chebyshev, euclidean, kendall_tau, max_ratio};
use crate::weighting::{ranking_of, right_eigenvector, rl_from_eigen, Method};

/// Compares `w^R` with `w^{-L}`. Violated iff the two rankings differ; each
/// pair ordered differently is a witness.
///
/// Flags: `rank_reversal`, `top_reversal` (different top classes),
/// `full_reversal` (tau = -1) and `transpose_inversion` (the EM ranking of
/// the transpose is the reverse of that of `A`).
pub fn audit_asymmetry(a: &Pcm, cfg: &AuditConfig) -> Result<AuditReport> {
    let eig = right_eigenvector(a, cfg.eigen)?;
    let right = eig.right.normalized(cfg.normalization);
    let inv_left = crate::weighting::WeightVector::new(
        eig.left.iter().map(|x| 1.0 / x).collect(),
        cfg.normalization,
    )?;
    let rank_r = ranking_of(&right, cfg.tie_tol);
    let rank_l = ranking_of(&inv_left, cfg.tie_tol);

    let mut report = AuditReport::new(Property::Asymmetry, Method::Em);
    report.cr = cfg.context_cr(a);
    report.metrics.insert("lambda_max".into(), eig.lambda_max);
    report
        .metrics
        .insert("euclidean".into(), euclidean(&right, &inv_left)?);
    report
        .metrics
        .insert("chebyshev".into(), chebyshev(&right, &inv_left)?);
    report
        .metrics
        .insert("max_ratio".into(), max_ratio(&right, &inv_left)?);
    let tau = kendall_tau(&rank_r, &rank_l)?;
    report.metrics.insert("kendall_tau".into(), tau);
    for (i, x) in right.iter().enumerate() {
        report.metrics.insert(format!("w_right_{}", i + 1), x);
    }
    for (i, x) in inv_left.iter().enumerate() {
        report.metrics.insert(format!("w_inv_left_{}", i + 1), x);
    }
    let rl = rl_from_eigen(&eig)?.normalized(cfg.normalization);
    for (i, x) in rl.iter().enumerate() {
        report.metrics.insert(format!("w_rlgm_{}", i + 1), x);
    }

    let n = a.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if rank_r.compare(i, j) != rank_l.compare(i, j) {
                report.witnesses.push(Witness::RankReversal { i, j });
            }
        }
    }
    let top_reversal = rank_r.top_class() != rank_l.top_class();
    if top_reversal {
        report.witnesses.push(Witness::TopChange {
            expected: rank_r.top_class().to_vec(),
            found: rank_l.top_class().to_vec(),
        });
    }
    report
        .flags
        .insert("rank_reversal".into(), rank_r != rank_l);
    report.flags.insert("top_reversal".into(), top_reversal);
    report
        .flags
        .insert("full_reversal".into(), rank_r.is_strict() && tau == -1.0);

    let t_eig = right_eigenvector(&a.transpose(), cfg.eigen)?;
    let rank_t = ranking_of(&t_eig.right, cfg.tie_tol);
    let inversion = (0..n)
        .all(|i| (0..n).all(|j| rank_t.compare(i, j) == rank_r.compare(i, j).reverse() || i == j));
    report.flags.insert("transpose_inversion".into(), inversion);

    report.rankings.insert("right".into(), rank_r.to_string());
    report
        .rankings
        .insert("inverse_left".into(), rank_l.to_string());
    report
        .rankings
        .insert("transpose".into(), rank_t.to_string());
    Ok(report.conclude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auditors::Verdict;
    use crate::inconsistency::RiTable;
    use crate::matrix::from_weights;

    fn cfg() -> AuditConfig {
        AuditConfig {
            ri: RiTable::user([(3, 0.52), (4, 0.89)]).unwrap(),
            ..AuditConfig::default()
        }
    }

    #[test]
    fn consistent_matrix_is_symmetric() {
        let a = from_weights(&[4.0, 1.0, 2.0, 3.0]).unwrap();
        let r = audit_asymmetry(&a, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.witnesses.is_empty());
        assert!(r.metrics["euclidean"] < 1e-12);
        assert_eq!(r.metrics["kendall_tau"], 1.0);
        assert!(r.flags["transpose_inversion"]);
        assert!(r.cr.unwrap().abs() < 1e-9);
    }

    #[test]
    fn order_three_coincides() {
        let a = Pcm::from_float_rows(
            &[
                vec![1.0, 3.0, 1.0 / 5.0],
                vec![1.0 / 3.0, 1.0, 7.0],
                vec![5.0, 1.0 / 7.0, 1.0],
            ],
            1e-12,
        )
        .unwrap();
        let r = audit_asymmetry(&a, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.metrics["max_ratio"] - 1.0 < 1e-9);
    }
}
