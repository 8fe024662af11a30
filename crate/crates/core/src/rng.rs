use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Rational;

/// Independent stream `index` under the root `seed`.
pub(crate) fn task_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform `k/d` with `|k| ≤ bound` and `1 ≤ d ≤ max_den`.
pub(crate) fn small_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    let k = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=max_den);
    Rational::new(k, d).expect("positive denominator")
}
