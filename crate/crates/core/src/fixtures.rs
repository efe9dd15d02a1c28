//! Reference matrices with known behaviour, used by the tests, the
//! benchmarks and the command-line `--fixture` option.
//!
//! Matrices printed to three or four decimals are not exactly reciprocal;
//! they are read with [`LOW_PRECISION_TOL`], which symmetrizes each pair by
//! its geometric mean.

use crate::error::Result;
use crate::io::parse_entry;
use crate::matrix::{validate, Entry, Pcm, DEFAULT_RECIPROCITY_TOL};

/// Reciprocity tolerance for matrices printed to low precision.
pub const LOW_PRECISION_TOL: f64 = 1e-2;

fn grid(text: &str) -> Vec<Vec<Entry>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|cell| parse_entry(cell).expect("fixture cells parse"))
                .collect()
        })
        .collect()
}

fn build(text: &str, tolerance: f64) -> Pcm {
    validate(&grid(text), tolerance).expect("fixture is a valid PCM")
}

/// Four alternatives where the right and inverse left eigenvectors order
/// alternatives 1 and 4 differently (CR about 0.33).
pub fn right_left_four() -> Pcm {
    build(
        "1   3   1/3 1/2
         1/3 1   1/6 2
         3   6   1   1
         2   1/2 1   1",
        DEFAULT_RECIPROCITY_TOL,
    )
}

/// Five alternatives with acceptable CR whose right and inverse left
/// eigenvectors disagree on the best alternative.
pub fn right_left_five() -> Pcm {
    build(
        "1   1   3   9   9
         1   1   5   8   5
         1/3 1/5 1   9   5
         1/9 1/8 1/9 1   1
         1/9 1/5 1/5 1   1",
        DEFAULT_RECIPROCITY_TOL,
    )
}

/// Inconsistent, yet `w^{-L} = w^R = (2/9, 5/18, 4/9, 1/18)`.
pub fn coinciding_vectors() -> Pcm {
    build(
        "1   8/5  1/4 4
         5/8 1    5/8 10
         4   8/5  1   4
         1/4 1/10 1/4 1",
        DEFAULT_RECIPROCITY_TOL,
    )
}

/// Nearly consistent (CR about 0.0007) with a right-left reversal of
/// alternatives 1 and 3. Printed to four decimals.
pub fn slight_reversal() -> Pcm {
    build(
        "1      0.4759 0.9832 0.4025
         2.1011 1      1.9975 0.7374
         1.0171 0.5006 1      0.3704
         2.4842 1.3560 2.6998 1",
        LOW_PRECISION_TOL,
    )
}

/// Right and inverse left eigenvectors give opposite strict rankings.
/// Printed to three decimals.
pub fn full_reversal() -> Pcm {
    build(
        "1     1.624 0.574 1.072 1.054
         0.616 1     1.132 1.089 1.269
         1.743 0.884 1     1.515 0.467
         0.933 0.919 0.660 1     1.694
         0.949 0.788 2.140 0.590 1",
        LOW_PRECISION_TOL,
    )
}

/// Top-alternative reversal with large weight gaps at CR below 0.1.
/// Printed to three decimals.
pub fn distant_reversal() -> Pcm {
    build(
        "1     0.371 2.013 5.389 0.243
         2.698 1     4.596 7.527 0.736
         0.497 0.218 1     2.321 0.167
         0.186 0.133 0.431 1     0.385
         4.120 1.359 5.973 2.598 1",
        LOW_PRECISION_TOL,
    )
}

/// Two judges whose EM favourites agree (alternative 1) while the EM
/// weights of their entrywise geometric mean favour alternative 2.
pub fn group_pair() -> [Pcm; 2] {
    [
        build(
            "1   1   2   1 1
             1   1   1   2 1
             1/2 1   1   1 2
             1   1/2 1   1 1
             1   1   1/2 1 1",
            DEFAULT_RECIPROCITY_TOL,
        ),
        build(
            "1   1   1 1 2
             1   1   1 2 1
             1   1   1 1 1/2
             1   1/2 1 1 1
             1/2 1   2 1 1",
            DEFAULT_RECIPROCITY_TOL,
        ),
    ]
}

/// Upper triangle given by `+1` (row player won: `p`) and `-1` (lost: `1/p`);
/// zeros mean a draw.
fn win_loss(results: &[&[i8]], p: f64) -> Result<Pcm> {
    let n = results.len();
    let rows: Vec<Vec<Entry>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let r = if i < j {
                        results[i][j]
                    } else if i > j {
                        -results[j][i]
                    } else {
                        0
                    };
                    Entry::Float(match r {
                        1 => p,
                        -1 => 1.0 / p,
                        _ => 1.0,
                    })
                })
                .collect()
        })
        .collect();
    validate(&rows, DEFAULT_RECIPROCITY_TOL)
}

/// Six-player round robin with five intransitive triads; `p` is the value
/// of a win. Any `p > 0` is accepted.
pub fn round_robin_six(p: f64) -> Result<Pcm> {
    win_loss(
        &[
            &[0, 1, 1, -1, 1, 1],
            &[0, 0, -1, 1, 1, -1],
            &[0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 0, -1, -1],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0, 0],
        ],
        p,
    )
}

/// Seven-player tournament whose EM ranking changes three times between
/// `p = 2` and `p = 4`. The commonly printed form lists `1/p` both at
/// (2, 7) and at (7, 2), which is not reciprocal; here `a_27 = 1/p` is kept
/// and `a_72 = p`.
pub fn round_robin_seven(p: f64) -> Result<Pcm> {
    win_loss(
        &[
            &[0, -1, 1, 1, 1, 1, 1],
            &[0, 0, 1, 1, -1, 1, -1],
            &[0, 0, 0, 1, 1, 1, 1],
            &[0, 0, 0, 0, 1, 1, 1],
            &[0, 0, 0, 0, 0, -1, 1],
            &[0, 0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0, 0, 0],
        ],
        p,
    )
}

/// Order-six family in which raising `a_12 = beta` from 0.3 to 0.5 lets
/// alternative 5 overtake alternative 1 under EM.
pub fn monotonicity_family(beta: f64) -> Result<Pcm> {
    let mut rows = grid(
        "1   0   8   1/9 1/4 1/9
         0   1   1/5 1/9 1   1/4
         1/8 5   1   1/8 1/2 1/7
         9   9   8   1   7   8
         4   1   2   1/7 1   1/9
         9   4   7   1/8 9   1",
    );
    rows[0][1] = Entry::Float(beta);
    rows[1][0] = Entry::Float(1.0 / beta);
    validate(&rows, DEFAULT_RECIPROCITY_TOL)
}

/// Four alternatives with CR about 0.074 whose EM vector is dominated.
pub fn inefficient_four() -> Pcm {
    build(
        "1   2   4   7
         1/2 1   3   2
         1/4 1/3 1   3
         1/7 1/2 1/3 1",
        DEFAULT_RECIPROCITY_TOL,
    )
}

/// Order `n >= 4`: alternative 1 beats everyone by `p`; alternatives
/// `2..=n` form a cycle `a_{k,k+1} = q` (with `a_{n,2} = q`), all other
/// entries 1. Its EM vector is inefficient for every `q != 1`.
#[allow(clippy::needless_range_loop)]
pub fn cyclic_perturbation(n: usize, p: f64, q: f64) -> Result<Pcm> {
    if n < 4 {
        return Err(crate::error::Error::OrderTooSmall { n, min: 4 });
    }
    let mut rows = vec![vec![Entry::Float(1.0); n]; n];
    for j in 1..n {
        rows[0][j] = Entry::Float(p);
        rows[j][0] = Entry::Float(1.0 / p);
    }
    for k in 1..n {
        let next = if k + 1 < n { k + 1 } else { 1 };
        rows[k][next] = Entry::Float(q);
        rows[next][k] = Entry::Float(1.0 / q);
    }
    validate(&rows, DEFAULT_RECIPROCITY_TOL)
}

/// Every fixed (non-parametric) fixture with a short name.
pub fn all_static() -> Vec<(&'static str, Pcm)> {
    let [g1, g2] = group_pair();
    vec![
        ("right_left_four", right_left_four()),
        ("right_left_five", right_left_five()),
        ("coinciding_vectors", coinciding_vectors()),
        ("slight_reversal", slight_reversal()),
        ("full_reversal", full_reversal()),
        ("distant_reversal", distant_reversal()),
        ("group_first", g1),
        ("group_second", g2),
        ("inefficient_four", inefficient_four()),
    ]
}
