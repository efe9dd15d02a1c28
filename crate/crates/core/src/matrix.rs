//! The pairwise comparison matrix data model.
//!
//! A [`Pcm`] is a positive reciprocal square matrix. Entries are stored as
//! `f64` for numerical work; when every entry was supplied as an exact
//! rational (Saaty-scale judgments, fractions such as `8/5`) the exact values
//! are kept alongside so reciprocity and consistency can be checked without a
//! tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported matrix order.
pub const MAX_ORDER: usize = 64;

/// Default relative tolerance for reciprocity repair in [`validate`].
pub const DEFAULT_RECIPROCITY_TOL: f64 = 1e-9;

/// One raw cell of an input grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entry {
    Exact(Rational64),
    Float(f64),
}

impl Entry {
    pub fn to_f64(self) -> f64 {
        match self {
            Entry::Exact(r) => ratio_to_f64(r),
            Entry::Float(x) => x,
        }
    }

    fn is_positive_finite(self) -> bool {
        match self {
            Entry::Exact(r) => *r.numer() > 0 && *r.denom() > 0,
            Entry::Float(x) => x.is_finite() && x > 0.0,
        }
    }
}

impl From<f64> for Entry {
    fn from(x: f64) -> Self {
        Entry::Float(x)
    }
}

impl From<Rational64> for Entry {
    fn from(r: Rational64) -> Self {
        Entry::Exact(r)
    }
}

impl From<i64> for Entry {
    fn from(v: i64) -> Self {
        Entry::Exact(Rational64::from_integer(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Exact,
    Float,
}

/// A validated pairwise comparison matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Pcm {
    n: usize,
    values: Vec<f64>,
    exact: Option<Vec<Rational64>>,
}

pub(crate) fn ratio_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_order(n: usize) -> Result<()> {
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange { n, max: MAX_ORDER });
    }
    Ok(())
}

/// Validates a raw grid and returns a [`Pcm`].
///
/// All-exact grids must be exactly reciprocal with a unit diagonal. As soon as
/// one entry is a float the whole matrix is treated as floating point: pairs
/// whose reciprocity error `|a_ij * a_ji - 1|` is within `tolerance` are
/// replaced by the geometric symmetrization `(g, 1/g)` with
/// `g = sqrt(a_ij / a_ji)`, larger errors are rejected.
pub fn validate<R: AsRef<[Entry]>>(grid: &[R], tolerance: f64) -> Result<Pcm> {
    let n = grid.len();
    for (row, cells) in grid.iter().enumerate() {
        let len = cells.as_ref().len();
        if len != n {
            return Err(Error::NonSquare {
                row,
                len,
                expected: n,
            });
        }
    }
    check_order(n)?;
    for (i, cells) in grid.iter().enumerate() {
        for (j, cell) in cells.as_ref().iter().enumerate() {
            if !cell.is_positive_finite() {
                return Err(Error::NonPositiveEntry { i, j });
            }
        }
    }

    let all_exact = grid
        .iter()
        .all(|r| r.as_ref().iter().all(|e| matches!(e, Entry::Exact(_))));
    if all_exact {
        let mut exact = Vec::with_capacity(n * n);
        for cells in grid {
            for cell in cells.as_ref() {
                if let Entry::Exact(r) = cell {
                    exact.push(*r);
                }
            }
        }
        for i in 0..n {
            if !exact[i * n + i].is_one() {
                return Err(Error::DiagonalNotOne { i });
            }
            for j in (i + 1)..n {
                let a = exact[i * n + j];
                let b = exact[j * n + i];
                if a.recip() != b {
                    let error = (ratio_to_f64(a) * ratio_to_f64(b) - 1.0).abs();
                    return Err(Error::ReciprocityViolation { i, j, error });
                }
            }
        }
        return Ok(Pcm::from_exact_unchecked(n, exact));
    }

    let mut values: Vec<f64> = grid
        .iter()
        .flat_map(|r| r.as_ref().iter().map(|e| e.to_f64()))
        .collect();
    for i in 0..n {
        if (values[i * n + i] - 1.0).abs() > tolerance {
            return Err(Error::DiagonalNotOne { i });
        }
        values[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let a = values[i * n + j];
            let b = values[j * n + i];
            let error = (a * b - 1.0).abs();
            if error > tolerance {
                return Err(Error::ReciprocityViolation { i, j, error });
            }
            let g = (a / b).sqrt();
            values[i * n + j] = g;
            values[j * n + i] = 1.0 / g;
        }
    }
    Ok(Pcm {
        n,
        values,
        exact: None,
    })
}

/// The consistent matrix `a_ij = w_i / w_j`.
pub fn from_weights(weights: &[f64]) -> Result<Pcm> {
    check_order(weights.len())?;
    if let Some(index) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::NonPositiveWeight { index });
    }
    Ok(Pcm::from_upper_float(weights.len(), |i, j| {
        weights[i] / weights[j]
    }))
}

/// Exact variant of [`from_weights`] for rational weights.
pub fn from_rational_weights(weights: &[Rational64]) -> Result<Pcm> {
    check_order(weights.len())?;
    if let Some(index) = weights.iter().position(|w| *w.numer() <= 0) {
        return Err(Error::NonPositiveWeight { index });
    }
    Ok(Pcm::from_upper_exact(weights.len(), |i, j| {
        weights[i] / weights[j]
    }))
}

impl Pcm {
    /// Builds an exact matrix from its strict upper triangle; the lower
    /// triangle is filled by reciprocity. `upper` must return positive values.
    pub(crate) fn from_upper_exact(
        n: usize,
        mut upper: impl FnMut(usize, usize) -> Rational64,
    ) -> Pcm {
        let mut exact = vec![Rational64::one(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let a = upper(i, j);
                exact[i * n + j] = a;
                exact[j * n + i] = a.recip();
            }
        }
        Pcm::from_exact_unchecked(n, exact)
    }

    /// Floating-point analogue of [`Pcm::from_upper_exact`].
    pub(crate) fn from_upper_float(n: usize, mut upper: impl FnMut(usize, usize) -> f64) -> Pcm {
        let mut values = vec![1.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let a = upper(i, j);
                values[i * n + j] = a;
                values[j * n + i] = 1.0 / a;
            }
        }
        Pcm {
            n,
            values,
            exact: None,
        }
    }

    fn from_exact_unchecked(n: usize, exact: Vec<Rational64>) -> Pcm {
        let values = exact.iter().map(|r| ratio_to_f64(*r)).collect();
        Pcm {
            n,
            values,
            exact: Some(exact),
        }
    }

    /// Exact matrix from rational rows, validated.
    pub fn from_rational_rows(rows: &[Vec<Rational64>]) -> Result<Pcm> {
        let grid: Vec<Vec<Entry>> = rows
            .iter()
            .map(|r| r.iter().copied().map(Entry::Exact).collect())
            .collect();
        validate(&grid, 0.0)
    }

    /// Floating-point matrix from rows, validated with `tolerance`.
    pub fn from_float_rows(rows: &[Vec<f64>], tolerance: f64) -> Result<Pcm> {
        let grid: Vec<Vec<Entry>> = rows
            .iter()
            .map(|r| r.iter().copied().map(Entry::Float).collect())
            .collect();
        validate(&grid, tolerance)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry_kind(&self) -> EntryKind {
        if self.exact.is_some() {
            EntryKind::Exact
        } else {
            EntryKind::Float
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn exact_entry(&self, i: usize, j: usize) -> Option<Rational64> {
        self.exact.as_ref().map(|e| e[i * self.n + j])
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Raw cells, exact where available; suitable for [`validate`].
    pub fn to_entries(&self) -> Vec<Vec<Entry>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| match self.exact_entry(i, j) {
                        Some(r) => Entry::Exact(r),
                        None => Entry::Float(self.get(i, j)),
                    })
                    .collect()
            })
            .collect()
    }

    /// Drops the exact representation.
    pub fn to_float(&self) -> Pcm {
        Pcm {
            n: self.n,
            values: self.values.clone(),
            exact: None,
        }
    }

    /// `out = A x`.
    #[inline]
    pub(crate) fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        for (i, o) in out.iter_mut().enumerate().take(n) {
            let row = &self.values[i * n..(i + 1) * n];
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Multiplicative transitivity `a_ik = a_ij a_jk` on every triple; exact
    /// for rational matrices, relative `tolerance` otherwise.
    pub fn is_consistent(&self, tolerance: f64) -> bool {
        let n = self.n;
        if let Some(exact) = &self.exact {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let a = exact[i * n + j];
                        let b = exact[j * n + k];
                        let c = exact[i * n + k];
                        if !exact_product_equals(a, b, c) {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.get(i, j) * self.get(j, k);
                    let rhs = self.get(i, k);
                    if (lhs - rhs).abs() > tolerance * rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Pcm {
        let n = self.n;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[j * n + i] = self.values[i * n + j];
            }
        }
        let exact = self.exact.as_ref().map(|e| {
            let mut t = e.clone();
            for i in 0..n {
                for j in 0..n {
                    t[j * n + i] = e[i * n + j];
                }
            }
            t
        });
        Pcm { n, values, exact }
    }

    /// Entrywise power `b_ij = a_ij^alpha`. Exactness survives only for
    /// `alpha == 1`.
    pub fn hadamard_power(&self, alpha: f64) -> Result<Pcm> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::NonPositiveExponent(alpha));
        }
        if alpha == 1.0 {
            return Ok(self.clone());
        }
        Ok(Pcm::from_upper_float(self.n, |i, j| {
            self.get(i, j).powf(alpha)
        }))
    }

    /// Returns a copy with `a_ij` replaced by `value` and `a_ji` by its
    /// reciprocal.
    pub fn with_entry(&self, i: usize, j: usize, value: Entry) -> Result<Pcm> {
        let n = self.n;
        if i >= n || j >= n || i == j {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        if !value.is_positive_finite() {
            return Err(Error::NonPositiveEntry { i, j });
        }
        match (value, &self.exact) {
            (Entry::Exact(r), Some(exact)) => {
                let mut exact = exact.clone();
                exact[i * n + j] = r;
                exact[j * n + i] = r.recip();
                Ok(Pcm::from_exact_unchecked(n, exact))
            }
            _ => {
                let x = value.to_f64();
                let mut values = self.values.clone();
                values[i * n + j] = x;
                values[j * n + i] = 1.0 / x;
                Ok(Pcm {
                    n,
                    values,
                    exact: None,
                })
            }
        }
    }

    /// Maximum relative reciprocity error `|a_ij a_ji - 1|` over all pairs.
    pub fn reciprocity_error(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) * self.get(j, i) - 1.0).abs());
            }
        }
        worst
    }

    /// Ordinal cycle census under the relation `a_ij > 1`.
    pub fn count_intransitive_triads(&self) -> TriadCensus {
        let n = self.n;
        let mut intransitive_count = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ij = self.beats(i, j);
                    let jk = self.beats(j, k);
                    let ki = self.beats(k, i);
                    let cyc = match (ij, jk, ki) {
                        (Some(a), Some(b), Some(c)) => a == b && b == c,
                        _ => false,
                    };
                    if cyc {
                        intransitive_count += 1;
                    }
                }
            }
        }
        TriadCensus {
            n,
            intransitive_count,
            max_possible: if n.is_multiple_of(2) {
                Some(n * (n * n - 4) / 24)
            } else {
                None
            },
        }
    }

    /// `Some(true)` if i beats j, `Some(false)` if j beats i, `None` on a tie.
    fn beats(&self, i: usize, j: usize) -> Option<bool> {
        if let Some(r) = self.exact_entry(i, j) {
            return match r.cmp(&Rational64::one()) {
                std::cmp::Ordering::Greater => Some(true),
                std::cmp::Ordering::Less => Some(false),
                std::cmp::Ordering::Equal => None,
            };
        }
        let a = self.get(i, j);
        if (a - 1.0).abs() <= 1e-12 {
            None
        } else {
            Some(a > 1.0)
        }
    }
}

impl fmt::Display for Pcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let cells: Vec<String> = (0..self.n)
                .map(|j| match self.exact_entry(i, j) {
                    Some(r) => r.to_string(),
                    None => format!("{:.6}", self.get(i, j)),
                })
                .collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

fn exact_product_equals(a: Rational64, b: Rational64, c: Rational64) -> bool {
    // a*b == c  <=>  an*bn*cd == cn*ad*bd
    let lhs = (*a.numer() as i128)
        .checked_mul(*b.numer() as i128)
        .and_then(|x| x.checked_mul(*c.denom() as i128));
    let rhs = (*c.numer() as i128)
        .checked_mul(*a.denom() as i128)
        .and_then(|x| x.checked_mul(*b.denom() as i128));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l == r,
        _ => {
            let l = BigInt::from(*a.numer()) * BigInt::from(*b.numer()) * BigInt::from(*c.denom());
            let r = BigInt::from(*c.numer()) * BigInt::from(*a.denom()) * BigInt::from(*b.denom());
            l == r
        }
    }
}

/// Count of intransitive triads together with the known upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadCensus {
    pub n: usize,
    pub intransitive_count: usize,
    /// `n(n^2 - 4)/24` for even `n`; unspecified (`None`) for odd `n`.
    pub max_possible: Option<usize>,
}

impl TriadCensus {
    pub fn total_triads(&self) -> usize {
        let n = self.n;
        if n < 3 {
            0
        } else {
            n * (n - 1) * (n - 2) / 6
        }
    }
}

/// Entrywise (weighted) geometric mean of equally sized matrices. Without
/// `weights` every matrix counts equally.
pub fn aggregate_geometric(matrices: &[Pcm], weights: Option<&[f64]>) -> Result<Pcm> {
    let first = matrices
        .first()
        .ok_or_else(|| Error::InvalidArgument("no matrices to aggregate".into()))?;
    let n = first.n();
    for m in matrices {
        if m.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: m.n(),
            });
        }
    }
    let uniform = vec![1.0 / matrices.len() as f64; matrices.len()];
    let weights = match weights {
        Some(w) => {
            if w.len() != matrices.len() {
                return Err(Error::LengthMismatch {
                    left: matrices.len(),
                    right: w.len(),
                });
            }
            if let Some(index) = w.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
                return Err(Error::NonPositiveWeight { index });
            }
            w
        }
        None => &uniform[..],
    };
    let total: f64 = weights.iter().sum();
    Ok(Pcm::from_upper_float(n, |i, j| {
        let log: f64 = matrices
            .iter()
            .zip(weights)
            .map(|(m, w)| w * m.get(i, j).ln())
            .sum();
        (log / total).exp()
    }))
}

/// The 17-value Saaty scale `{1/9, ..., 1/2, 1, 2, ..., 9}`, optionally
/// extended by 10 at the top.
#[derive(Debug, Clone, Copy, Default)]
pub struct SaatyScale;

impl SaatyScale {
    pub const LEN: usize = 17;
    /// Position of the value 1.
    pub const ONE: usize = 8;

    pub fn values() -> [Rational64; 17] {
        let mut out = [Rational64::one(); 17];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = Self::value(k);
        }
        out
    }

    /// Value at position `k` (0 = 1/9, 8 = 1, 16 = 9).
    pub fn value(k: usize) -> Rational64 {
        assert!(k < Self::LEN, "scale position {k} out of range");
        if k < Self::ONE {
            Rational64::new(1, (Self::ONE - k + 1) as i64)
        } else {
            Rational64::from_integer((k - Self::ONE + 1) as i64)
        }
    }

    /// Position of an exact value on the 17-value scale.
    pub fn position(value: Rational64) -> Option<usize> {
        let (p, q) = (*value.numer(), *value.denom());
        match (p, q) {
            (1, 1..=9) => Some(Self::ONE + 1 - q as usize),
            (2..=9, 1) => Some(Self::ONE + p as usize - 1),
            _ => None,
        }
    }

    /// Position of a float within relative tolerance `1e-9`.
    pub fn position_f64(value: f64) -> Option<usize> {
        (0..Self::LEN).find(|&k| {
            let v = ratio_to_f64(Self::value(k));
            (v - value).abs() <= 1e-9 * v
        })
    }

    /// Successor on the scale extended by 10 (`9 -> 10`); `None` for 10 or
    /// off-scale values.
    pub fn successor(value: Rational64) -> Option<Rational64> {
        match Self::position(value)? {
            k if k + 1 < Self::LEN => Some(Self::value(k + 1)),
            _ => Some(Rational64::from_integer(10)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn int(v: i64) -> Entry {
        Entry::from(v)
    }

    fn frac(p: i64, q: i64) -> Entry {
        Entry::Exact(r(p, q))
    }

    #[test]
    fn accepts_all_ones() {
        let grid = vec![vec![int(1); 3]; 3];
        let a = validate(&grid, DEFAULT_RECIPROCITY_TOL).unwrap();
        assert_eq!(a.n(), 3);
        assert!(a.is_exact());
        assert!(a.is_consistent(0.0));
    }

    #[test]
    fn rejects_non_reciprocal_pair() {
        let grid = vec![vec![int(1), int(2)], vec![int(3), int(1)]];
        assert!(matches!(
            validate(&grid, DEFAULT_RECIPROCITY_TOL),
            Err(Error::ReciprocityViolation { i: 0, j: 1, .. })
        ));
        let grid = vec![
            vec![Entry::Float(1.0), Entry::Float(2.0)],
            vec![Entry::Float(3.0), Entry::Float(1.0)],
        ];
        assert!(matches!(
            validate(&grid, DEFAULT_RECIPROCITY_TOL),
            Err(Error::ReciprocityViolation { .. })
        ));
    }

    #[test]
    fn rejects_shape_and_sign_errors() {
        let grid = vec![vec![int(1), int(2)], vec![int(1)]];
        assert!(matches!(
            validate(&grid, 1e-9),
            Err(Error::NonSquare { row: 1, .. })
        ));
        let grid = vec![vec![int(1)]];
        assert!(matches!(
            validate(&grid, 1e-9),
            Err(Error::OrderOutOfRange { n: 1, .. })
        ));
        let grid = vec![vec![int(1), int(-2)], vec![frac(-1, 2), int(1)]];
        assert!(matches!(
            validate(&grid, 1e-9),
            Err(Error::NonPositiveEntry { i: 0, j: 1 })
        ));
        let grid = vec![vec![int(2), int(2)], vec![frac(1, 2), int(1)]];
        assert!(matches!(
            validate(&grid, 1e-9),
            Err(Error::DiagonalNotOne { i: 0 })
        ));
    }

    #[test]
    fn float_symmetrization_is_geometric() {
        let grid = vec![
            vec![Entry::Float(1.0), Entry::Float(2.0)],
            vec![Entry::Float(0.5001), Entry::Float(1.0)],
        ];
        assert!(validate(&grid, 1e-9).is_err());
        let a = validate(&grid, 1e-3).unwrap();
        let g = (2.0f64 / 0.5001).sqrt();
        assert!((a.get(0, 1) - g).abs() < 1e-15);
        assert!((a.get(0, 1) * a.get(1, 0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_weights_builds_ratios() {
        let a = from_weights(&[1.0, 2.0, 4.0]).unwrap();
        assert_eq!(a.get(0, 2), 0.25);
        assert_eq!(a.get(2, 0), 4.0);
        assert!(a.is_consistent(1e-12));

        let ones = from_weights(&[1.0; 4]).unwrap();
        assert!(ones.as_slice().iter().all(|&x| x == 1.0));

        let two = from_rational_weights(&[r(3, 1), r(1, 1)]).unwrap();
        assert_eq!(two.exact_entry(0, 1), Some(r(3, 1)));
        assert_eq!(two.exact_entry(1, 0), Some(r(1, 3)));

        assert!(matches!(
            from_weights(&[1.0, 0.0, 2.0]),
            Err(Error::NonPositiveWeight { index: 1 })
        ));
    }

    #[test]
    fn exact_consistency_check() {
        let c = Pcm::from_rational_rows(&[
            vec![r(1, 1), r(8, 5), r(1, 4), r(4, 1)],
            vec![r(5, 8), r(1, 1), r(5, 8), r(10, 1)],
            vec![r(4, 1), r(8, 5), r(1, 1), r(4, 1)],
            vec![r(1, 4), r(1, 10), r(1, 4), r(1, 1)],
        ]);
        // c_12 c_23 = 1 but c_13 = 1/4
        let c = c.unwrap();
        assert!(!c.is_consistent(0.0));
        assert!(from_rational_weights(&[r(1, 1), r(2, 1), r(4, 1)])
            .unwrap()
            .is_consistent(0.0));
    }

    #[test]
    fn transpose_of_consistent_inverts_weights() {
        let w = [1.0, 2.0, 5.0];
        let inv: Vec<f64> = w.iter().map(|x| 1.0 / x).collect();
        let t = from_weights(&w).unwrap().transpose();
        let expected = from_weights(&inv).unwrap();
        for (a, b) in t.as_slice().iter().zip(expected.as_slice()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn hadamard_power_cases() {
        let a = Pcm::from_rational_rows(&[vec![r(1, 1), r(4, 1)], vec![r(1, 4), r(1, 1)]]).unwrap();
        assert_eq!(a.hadamard_power(1.0).unwrap(), a);
        let h = a.hadamard_power(0.5).unwrap();
        assert!((h.get(0, 1) - 2.0).abs() < 1e-15);
        assert!((h.get(1, 0) - 0.5).abs() < 1e-15);
        assert!(matches!(
            a.hadamard_power(0.0),
            Err(Error::NonPositiveExponent(_))
        ));
        assert!(a.hadamard_power(-1.0).is_err());
    }

    #[test]
    fn single_three_cycle() {
        let a = Pcm::from_rational_rows(&[
            vec![r(1, 1), r(2, 1), r(1, 2)],
            vec![r(1, 2), r(1, 1), r(2, 1)],
            vec![r(2, 1), r(1, 2), r(1, 1)],
        ])
        .unwrap();
        let census = a.count_intransitive_triads();
        assert_eq!(census.intransitive_count, 1);
        assert_eq!(census.max_possible, None);
        assert_eq!(census.total_triads(), 1);
    }

    #[test]
    fn ties_never_form_cycles() {
        let a = Pcm::from_rational_rows(&[
            vec![r(1, 1), r(2, 1), r(1, 1)],
            vec![r(1, 2), r(1, 1), r(2, 1)],
            vec![r(1, 1), r(1, 2), r(1, 1)],
        ])
        .unwrap();
        assert_eq!(a.count_intransitive_triads().intransitive_count, 0);
    }

    #[test]
    fn even_order_bound() {
        let a = from_weights(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let census = a.count_intransitive_triads();
        assert_eq!(census.intransitive_count, 0);
        assert_eq!(census.max_possible, Some(8));
    }

    #[test]
    fn saaty_scale_layout() {
        let v = SaatyScale::values();
        assert_eq!(v.len(), 17);
        assert_eq!(v[0], r(1, 9));
        assert_eq!(v[8], r(1, 1));
        assert_eq!(v[16], r(9, 1));
        for (k, x) in v.iter().enumerate() {
            assert_eq!(SaatyScale::position(*x), Some(k));
            assert_eq!(v[16 - k], x.recip());
            assert_eq!(SaatyScale::position_f64(ratio_to_f64(*x)), Some(k));
        }
        assert_eq!(SaatyScale::position(r(2, 3)), None);
        assert_eq!(SaatyScale::position(r(10, 1)), None);
    }

    #[test]
    fn scale_successor() {
        assert_eq!(SaatyScale::successor(r(1, 2)), Some(r(1, 1)));
        assert_eq!(SaatyScale::successor(r(1, 9)), Some(r(1, 8)));
        assert_eq!(SaatyScale::successor(r(9, 1)), Some(r(10, 1)));
        assert_eq!(SaatyScale::successor(r(10, 1)), None);
        assert_eq!(SaatyScale::successor(r(3, 2)), None);
    }

    #[test]
    fn geometric_aggregation_of_copies_is_identity() {
        let a = from_weights(&[1.0, 3.0, 7.0]).unwrap();
        let agg = aggregate_geometric(&[a.clone(), a.clone(), a.clone()], None).unwrap();
        for (x, y) in agg.as_slice().iter().zip(a.as_slice()) {
            assert!((x - y).abs() < 1e-12 * y);
        }
        let b = from_weights(&[1.0, 3.0]).unwrap();
        assert!(matches!(
            aggregate_geometric(&[a, b], None),
            Err(Error::SizeMismatch { .. })
        ));
    }
}
