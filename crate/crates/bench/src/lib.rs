//! Fixed, seeded inputs shared by the benchmarks.

use eulext_core::{EdgeProbabilityModel, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn homogeneous_graph(n: usize, p: f64, seed: u64) -> Graph {
    let model = EdgeProbabilityModel::homogeneous(n, p).expect("valid probability");
    model.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn family_graph(n: usize, seed: u64) -> Graph {
    let model = EdgeProbabilityModel::example_family(n, 0.4, 0.2).expect("valid family");
    model.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
