//! Shared fixtures for the criterion benchmarks.

use cantor_core::{
    build_a, build_b, random_word, Alphabet, AsyncAutomaton, EventuallyPeriodicWord,
};

/// `A_n∘B_m` built through the generic composition.
pub fn composite(n: u32, m: u32) -> AsyncAutomaton {
    build_a(n)
        .and_then(|a| a.compose(&build_b(m)?))
        .expect("valid parameters")
}

/// Deterministic pseudo-random inputs over `{0..n}`.
pub fn inputs(n: u32, count: usize, seed: u64) -> Vec<EventuallyPeriodicWord> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_word(Alphabet::up_to(n), &mut rng))
        .collect()
}
