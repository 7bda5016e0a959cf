use eulext_core::EdgeProbabilityModel;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..12).prop_flat_map(|n| {
        proptest::collection::vec(0.0f64..=1.0, n * (n - 1) / 2).prop_map(move |vals| {
            let mut rows = vec![vec![0.0; n]; n];
            let mut it = vals.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let p = it.next().unwrap();
                    rows[u][v] = p;
                    rows[v][u] = p;
                }
            }
            rows
        })
    })
}

proptest! {
    #[test]
    fn alpha_ordering_on_explicit_matrices(rows in arb_matrix()) {
        let m = EdgeProbabilityModel::explicit(rows).unwrap();
        let s = m.alpha_stats();
        prop_assert!(s.alpha_low <= s.alpha_e + 1e-12);
        prop_assert!(s.alpha_e <= s.alpha_up + 1e-12);
        let mean: f64 = s.per_vertex_avg.iter().sum::<f64>() / m.n() as f64;
        // handshake: the vertex averages average to the edge density
        prop_assert!((mean - s.alpha_e).abs() < 1e-12);
    }

    #[test]
    fn homogeneous_stats_are_exact(n in 2usize..500, p in 0.0f64..=1.0) {
        let s = EdgeProbabilityModel::homogeneous(n, p).unwrap().alpha_stats();
        prop_assert_eq!((s.alpha_low, s.alpha_up, s.alpha_e), (p, p, p));
    }

    #[test]
    fn family_alpha_ordering(n in 16usize..400, b in 0.01f64..0.5, gap in 0.01f64..0.49) {
        let a = (b + gap).min(0.99);
        let s = EdgeProbabilityModel::example_family(n, a, b).unwrap().alpha_stats();
        prop_assert!(s.alpha_low <= s.alpha_e && s.alpha_e <= s.alpha_up);
    }
}

#[test]
fn edge_inclusion_frequency_and_independence() {
    let m = EdgeProbabilityModel::homogeneous(100, 0.3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = 10_000;
    let (mut x, mut y, mut xy) = (0.0, 0.0, 0.0);
    for _ in 0..samples {
        let g = m.sample(&mut rng);
        let a = f64::from(u8::from(g.has_edge(0, 1)));
        let b = f64::from(u8::from(g.has_edge(2, 3)));
        x += a;
        y += b;
        xy += a * b;
    }
    let n = samples as f64;
    let freq = x / n;
    // 3 sigma of Binomial(10^4, 0.3) / 10^4 is 0.0137
    assert!((freq - 0.3).abs() <= 0.015, "frequency {freq}");
    let cov = xy / n - (x / n) * (y / n);
    // sd of the covariance estimate is about p(1-p)/sqrt(N) = 0.0021
    assert!(cov.abs() <= 3.0 * 0.21 / n.sqrt(), "covariance {cov}");
}

#[test]
fn identical_seeds_identical_graphs() {
    let m = EdgeProbabilityModel::example_family(120, 0.4, 0.2).unwrap();
    for seed in 0..5 {
        let a = m.sample(&mut ChaCha8Rng::seed_from_u64(seed));
        let b = m.sample(&mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(a, b);
    }
}
