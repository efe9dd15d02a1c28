//! Pinned random streams and distributional checks on the generators.

use num_rational::Rational64;
use pcm_core::generators::{
    consistent_perturbed, saaty_uniform, unit_interval_ratio, ExperimentSpec, Scheme,
};
use pcm_core::matrix::SaatyScale;
use pcm_core::rng::{purpose, Stream};

#[test]
fn stream_output_is_pinned() {
    let mut s = Stream::new(42, purpose::SAATY_UNIFORM, 0);
    let first: Vec<u64> = (0..4).map(|_| s.next_u64()).collect();
    assert_eq!(
        first,
        [
            15261334401249785410,
            11698796679007244419,
            990384257814779291,
            11170583801888072897
        ]
    );
    let mut s = Stream::new(42, purpose::SAATY_UNIFORM, 1);
    let second: Vec<u64> = (0..4).map(|_| s.next_u64()).collect();
    assert_eq!(
        second,
        [
            7472246507687015742,
            2677517527811314396,
            17553510156142791476,
            10188808480290281603
        ]
    );
    let mut s = Stream::new(0, 0, 0);
    let u: Vec<f64> = (0..3).map(|_| s.uniform()).collect();
    assert_eq!(
        u,
        [0.7483645200678057, 0.22832533476216932, 0.23936456831985675]
    );
}

#[test]
fn generator_outputs_are_pinned() {
    let a = saaty_uniform(4, 42).unwrap();
    let r = |n, d| Rational64::new(n, d);
    let upper = [
        (0, 1, r(1, 2)),
        (0, 2, r(1, 9)),
        (0, 3, r(8, 1)),
        (1, 2, r(2, 1)),
        (1, 3, r(2, 1)),
        (2, 3, r(1, 1)),
    ];
    for (i, j, v) in upper {
        assert_eq!(a.exact_entry(i, j), Some(v), "({i},{j})");
        assert_eq!(a.exact_entry(j, i), Some(v.recip()), "({j},{i})");
    }

    let u = unit_interval_ratio(3, 42).unwrap();
    assert_eq!(u.get(0, 1), 14.382714451724759);
    assert_eq!(u.get(1, 2), 0.5387281790568589);

    let c = consistent_perturbed(3, 0.2, 42).unwrap();
    assert_eq!(c.get(0, 1), 1.2123847742216036);
    assert_eq!(c.get(1, 2), 1.700860741913733);
}

#[test]
fn trials_are_independent_of_evaluation_order() {
    use pcm_core::experiment::generate;
    use pcm_core::RiTable;
    let spec = ExperimentSpec::new(Scheme::SaatyUniform, 5, 10, 99);
    let ri = RiTable::pinned();
    let forward: Vec<_> = (0..10)
        .map(|t| generate(&spec, t, &ri).unwrap().0)
        .collect();
    let backward: Vec<_> = (0..10)
        .rev()
        .map(|t| generate(&spec, t, &ri).unwrap().0)
        .collect();
    for (t, m) in forward.iter().enumerate() {
        assert_eq!(m, &backward[9 - t]);
    }
}

/// Pearson statistic of the upper-left entry's scale position across many
/// matrices; 16 degrees of freedom.
#[test]
fn saaty_marginal_is_uniform_over_the_scale() {
    const DRAWS: u64 = 34_000;
    let mut counts = [0u64; 17];
    for seed in 0..DRAWS {
        let a = saaty_uniform(4, seed).unwrap();
        let pos = SaatyScale::position(a.exact_entry(0, 1).unwrap()).expect("on scale");
        counts[pos] += 1;
    }
    let expected = DRAWS as f64 / 17.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // upper 0.1% point of chi-square with 16 degrees of freedom
    assert!(chi2 < 39.25, "chi2 = {chi2}, counts = {counts:?}");
}

fn assert_sign_balanced(positive: u64, total: u64) {
    // normal approximation to the binomial, two-sided 0.1% level
    let half = total as f64 / 2.0;
    let bound = 3.29 * (total as f64).sqrt() / 2.0;
    assert!(
        (positive as f64 - half).abs() < bound,
        "{positive} positive out of {total}"
    );
}

#[test]
fn log_entries_are_symmetric_about_zero() {
    let (mut pos, mut total) = (0, 0);
    for seed in 0..20_000 {
        let x = saaty_uniform(3, seed).unwrap().get(0, 1).ln();
        if x != 0.0 {
            total += 1;
            pos += u64::from(x > 0.0);
        }
    }
    assert_sign_balanced(pos, total);

    let mut pos = 0;
    for seed in 0..20_000 {
        pos += u64::from(unit_interval_ratio(3, seed).unwrap().get(0, 1) > 1.0);
    }
    assert_sign_balanced(pos, 20_000);
}

#[test]
fn consistent_perturbed_stays_close_to_consistent() {
    for seed in 0..200 {
        let a = consistent_perturbed(6, 0.1, seed).unwrap();
        assert!(a.reciprocity_error() < 1e-12);
        let ci = pcm_core::inconsistency::consistency_index(&a).unwrap();
        assert!((0.0..0.05).contains(&ci), "seed {seed}: CI {ci}");
    }
}
