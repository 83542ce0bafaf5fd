use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

/// Name and version of the generator behind [`random_baseline`].
pub const RANDOM_GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.3), seed_from_u64";

/// `n` uniform scores in [0, 1). Each call owns its generator, so equal
/// `(n, seed)` always yield equal lists.
pub fn random_baseline<T: Scalar>(n: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| T::of(rng.gen::<f64>())).collect()
}
