//! Distances between weight vectors and rank correlation between rankings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weighting::WeightVector;

/// A tie-aware total preorder: tie classes listed from best to worst.
/// Alternatives are 0-based internally and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    classes: Vec<Vec<usize>>,
}

impl Ranking {
    /// Builds a ranking from tie classes; every class is sorted and the
    /// classes must partition `0..n`.
    pub fn from_classes(mut classes: Vec<Vec<usize>>) -> Result<Ranking> {
        classes.retain(|c| !c.is_empty());
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for class in &mut classes {
            class.sort_unstable();
            for &i in class.iter() {
                if i >= n || seen[i] {
                    return Err(Error::InvalidArgument(format!(
                        "tie classes do not partition 0..{n}"
                    )));
                }
                seen[i] = true;
            }
        }
        Ok(Ranking { classes })
    }

    pub fn n(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn top_class(&self) -> &[usize] {
        self.classes.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_strict(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    /// Class index of every alternative (0 = best).
    pub fn levels(&self) -> Vec<usize> {
        let mut levels = vec![0; self.n()];
        for (level, class) in self.classes.iter().enumerate() {
            for &i in class {
                levels[i] = level;
            }
        }
        levels
    }

    /// `Greater` if `i` is ranked above `j`, `Equal` on a tie.
    pub fn compare(&self, i: usize, j: usize) -> Ordering {
        let levels = self.levels();
        levels[j].cmp(&levels[i])
    }

    pub fn reversed(&self) -> Ranking {
        let mut classes = self.classes.clone();
        classes.reverse();
        Ranking { classes }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        write!(f, "{}", parts.join(" > "))
    }
}

/// Parses the display form, e.g. `"1~2 > 3~5 > 4"` (1-based). `≻` and `∼`
/// are accepted as well.
impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ranking> {
        let normalized = s.replace('≻', ">").replace('∼', "~");
        let classes = normalized
            .split('>')
            .map(|class| {
                class
                    .split('~')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|&v| v >= 1)
                            .map(|v| v - 1)
                            .ok_or_else(|| {
                                Error::InvalidArgument(format!("bad ranking token {t:?}"))
                            })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ranking::from_classes(classes)
    }
}

fn check_pair(w1: &WeightVector, w2: &WeightVector) -> Result<()> {
    if w1.len() != w2.len() {
        return Err(Error::LengthMismatch {
            left: w1.len(),
            right: w2.len(),
        });
    }
    if w1.normalization() != w2.normalization() {
        return Err(Error::NormalizationMismatch);
    }
    Ok(())
}

/// Root of the sum of squared differences.
pub fn euclidean(w1: &WeightVector, w2: &WeightVector) -> Result<f64> {
    check_pair(w1, w2)?;
    Ok(w1
        .iter()
        .zip(w2.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Largest absolute componentwise difference.
pub fn chebyshev(w1: &WeightVector, w2: &WeightVector) -> Result<f64> {
    check_pair(w1, w2)?;
    Ok(w1
        .iter()
        .zip(w2.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// `max_i max(w1_i / w2_i, w2_i / w1_i)`; always at least 1.
pub fn max_ratio(w1: &WeightVector, w2: &WeightVector) -> Result<f64> {
    check_pair(w1, w2)?;
    Ok(w1
        .iter()
        .zip(w2.iter())
        .map(|(a, b)| (a / b).max(b / a))
        .fold(1.0, f64::max))
}

/// Which Kendall tau to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauVariant {
    /// Tie-corrected `(C - D) / sqrt((n0 - t1)(n0 - t2))`.
    #[default]
    B,
    /// `(C - D) / n0`, ignoring ties in the denominator.
    A,
}

/// Tau-b between two rankings of the same alternatives.
pub fn kendall_tau(r1: &Ranking, r2: &Ranking) -> Result<f64> {
    kendall_tau_with(r1, r2, TauVariant::B)
}

/// Kendall tau of the chosen variant. When the tau-b denominator vanishes
/// (one ranking is a single tie class) the result is 1 for identical rankings
/// and 0 otherwise.
pub fn kendall_tau_with(r1: &Ranking, r2: &Ranking, variant: TauVariant) -> Result<f64> {
    let n = r1.n();
    if r2.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: r2.n(),
        });
    }
    let l1 = r1.levels();
    let l2 = r2.levels();
    let (mut concordant, mut discordant, mut ties1, mut ties2) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let a = l1[i].cmp(&l1[j]);
            let b = l2[i].cmp(&l2[j]);
            if a == Ordering::Equal {
                ties1 += 1;
            }
            if b == Ordering::Equal {
                ties2 += 1;
            }
            if a != Ordering::Equal && b != Ordering::Equal {
                if a == b {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as i64;
    let numerator = (concordant - discordant) as f64;
    let denominator = match variant {
        TauVariant::B => (((pairs - ties1) * (pairs - ties2)) as f64).sqrt(),
        TauVariant::A => pairs as f64,
    };
    if denominator == 0.0 {
        return Ok(if r1 == r2 { 1.0 } else { 0.0 });
    }
    Ok(numerator / denominator)
}
