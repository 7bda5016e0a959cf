use eulext_core::bounds::{
    check_condition, chernoff_tail, degree_violation_bound, e_all_check, e_good_check, step_success_bound, BoundParams,
};
use eulext_core::{AlphaStats, EdgeProbabilityModel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stats(low: f64, up: f64, e: f64) -> AlphaStats {
    AlphaStats { alpha_low: low, alpha_up: up, alpha_e: e, per_vertex_avg: vec![] }
}

proptest! {
    #[test]
    fn chernoff_is_monotone(mu in 0.1f64..1e4, dmu in 0.1f64..100.0, eps in 0.01f64..0.49, deps in 0.001f64..0.01) {
        let base = chernoff_tail(mu, eps).unwrap();
        prop_assert!(chernoff_tail(mu + dmu, eps).unwrap() <= base);
        prop_assert!(chernoff_tail(mu, eps + deps).unwrap() <= base);
        prop_assert!(base > 0.0 && base <= 1.0);
    }

    /// Whenever the sufficient condition holds and n is large enough that
    /// n^(zeta - gamma) >= 2 and n^(1 - zeta) >= 9, the step difference
    /// dominates the closed-form floor.
    #[test]
    fn step_difference_dominates_floor(
        log10_n in 3.0f64..8.0,
        beta in 0.01f64..0.49,
        gamma_frac in 0.01f64..0.99,
        low_u in 0.0f64..1.0,
        e_u in 0.0f64..1.0,
        up_u in 0.0f64..1.0,
    ) {
        let n = 10f64.powf(log10_n) as usize;
        let gamma = gamma_frac * (0.5 - beta);
        let params = BoundParams::with_midpoint(n, beta, gamma).unwrap();
        let nf = n as f64;
        prop_assume!(nf.powf(params.zeta - gamma) >= 2.0 && nf.powf(1.0 - params.zeta) >= 9.0);
        let floor = nf.powf(-beta);
        prop_assume!(floor < 0.7);
        let e = floor + e_u * (0.7 - floor);
        let limit = f64::max(0.5, 1.0 - (e / 2.0).sqrt()) - nf.powf(-gamma);
        prop_assume!(e <= limit);
        let s = stats(floor + low_u * (e - floor), e + up_u * (limit - e), e);
        prop_assert!(check_condition(&s, n, beta, gamma).unwrap().holds);
        let b = step_success_bound(&s, &params, 1);
        prop_assert!(b.diff >= b.analytic_floor - 1e-12, "{:?}", b);
    }
}

#[test]
fn step_difference_positive_at_desk_sizes() {
    for n in [10_000usize, 100_000] {
        let params = BoundParams::with_midpoint(n, 0.2, 0.1).unwrap();
        let s = EdgeProbabilityModel::homogeneous(n, 0.2).unwrap().alpha_stats();
        assert!(check_condition(&s, n, 0.2, 0.1).unwrap().holds);
        let b = step_success_bound(&s, &params, 100);
        assert!(b.analytic_floor > 0.0 && b.diff >= b.analytic_floor, "{b:?}");
    }
}

#[test]
fn events_are_pure_functions_of_the_graph() {
    let m = EdgeProbabilityModel::homogeneous(150, 0.3).unwrap();
    let s = m.alpha_stats();
    let params = BoundParams::with_midpoint(150, 0.2, 0.1).unwrap();
    let g = m.sample(&mut ChaCha8Rng::seed_from_u64(5));
    let h = g.clone();
    assert_eq!(e_good_check(&g, &s, &params), e_good_check(&h, &s, &params));
    assert_eq!(e_all_check(&g), e_all_check(&h));
}

#[test]
fn e_all_is_frequent_at_n400() {
    let m = EdgeProbabilityModel::homogeneous(400, 0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let hits = (0..100).filter(|_| e_all_check(&m.sample(&mut rng))).count();
    assert!(hits >= 99, "{hits}/100");
}

/// With `eps` large enough that the per-vertex tail is below
/// `exp(-(ln n)^2)`, the observed degree-event violation rate sits under
/// the union bound `n exp(-(ln n)^2)` plus sampling slack.
#[test]
fn degree_violations_respect_the_union_bound() {
    let n = 1000;
    let p = 0.8;
    let eps = 0.5;
    let mu = p * (n - 1) as f64;
    let per_vertex = chernoff_tail(mu, eps).unwrap();
    assert!(per_vertex <= (-(n as f64).ln().powi(2)).exp());
    let bound = degree_violation_bound(n);

    let m = EdgeProbabilityModel::homogeneous(n, p).unwrap();
    let s = m.alpha_stats();
    let params = BoundParams { n, beta: 0.2, gamma: 0.1, zeta: 0.3, epsilon: eps };
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let trials = 40;
    let violations = (0..trials).filter(|_| !e_good_check(&m.sample(&mut rng), &s, &params).deg_ok).count();
    let slack = 3.0 / trials as f64;
    assert!((violations as f64 / trials as f64) <= bound + slack);
}
