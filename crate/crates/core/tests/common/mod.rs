//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use pcm_core::matrix::Pcm;
use pcm_core::rng::Stream;

/// `v` approximates every `a_ij` at least as well as `w` and some entry
/// strictly better. Written from the definition; uses none of the library's
/// efficiency code.
pub fn dominates(a: &Pcm, w: &[f64], v: &[f64]) -> bool {
    let n = a.n();
    let mut strict = false;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let old = (a.get(i, j) - w[i] / w[j]).abs();
            let new = (a.get(i, j) - v[i] / v[j]).abs();
            if new > old + 1e-12 * a.get(i, j).max(1.0) {
                return false;
            }
            strict |= old - new > 1e-10;
        }
    }
    strict
}

const STEPS: [f64; 8] = [0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

/// Looks for a vector dominating `w`: first every proper subset scaled up or
/// down by a range of step sizes, then random multiplicative perturbations
/// of all coordinates. Returns the first dominator found.
pub fn search_dominator(
    a: &Pcm,
    w: &[f64],
    stream: &mut Stream,
    random_probes: usize,
) -> Option<Vec<f64>> {
    let n = a.n();
    assert!(n <= 16, "subset search is exponential");
    for mask in 1u32..(1 << n) - 1 {
        for step in STEPS {
            for t in [1.0 + step, 1.0 / (1.0 + step)] {
                let v: Vec<f64> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { w[i] * t } else { w[i] })
                    .collect();
                if dominates(a, w, &v) {
                    return Some(v);
                }
            }
        }
    }
    for _ in 0..random_probes {
        let scale = STEPS[stream.below(STEPS.len() as u64) as usize];
        let v: Vec<f64> = w
            .iter()
            .map(|x| x * (scale * (2.0 * stream.uniform() - 1.0)).exp())
            .collect();
        if dominates(a, w, &v) {
            return Some(v);
        }
    }
    None
}

/// A random (matrix, weight vector) pair of order 3 to 6. The vector is the
/// EM or GM vector, a small perturbation of the EM vector, or uniform noise,
/// so both efficient and inefficient vectors occur often.
pub fn random_pair(seed: u64, t: u64) -> (Pcm, Vec<f64>) {
    use pcm_core::generators::{saaty_uniform_with, unit_interval_ratio_with};
    use pcm_core::weighting::{geometric_mean_weights, EigenConfig, Method};

    let mut stream = Stream::new(seed, 0x7e57, t);
    let n = 3 + (t % 4) as usize;
    let a = if (t / 4).is_multiple_of(2) {
        saaty_uniform_with(n, &mut stream)
    } else {
        unit_interval_ratio_with(n, &mut stream)
    };
    let em = Method::Em
        .weights(&a, EigenConfig::default())
        .expect("random PCMs converge")
        .into_vec();
    let w = match (t / 8) % 4 {
        0 => em,
        1 => geometric_mean_weights(&a).into_vec(),
        2 => em
            .iter()
            .map(|x| x * (0.05 * (2.0 * stream.uniform() - 1.0)).exp())
            .collect(),
        _ => (0..n).map(|_| stream.uniform_open()).collect(),
    };
    (a, w)
}
