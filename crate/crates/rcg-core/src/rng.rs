//! Seedable, stream-splittable randomness.
//!
//! [`RngStream`] wraps a counter-based generator (ChaCha): the same
//! `(seed, stream)` pair always produces the same draw sequence, and
//! distinct stream indices give statistically independent streams. This
//! is the contract parallel sweeps rely on — results are deterministic
//! regardless of scheduling.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One independent stream of a seeded counter-based RNG.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    /// Stream `stream` of the generator seeded with `seed`.
    pub fn new(seed: u64, stream: u64) -> RngStream {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngStream {
            seed,
            stream,
            inner,
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The stream index.
    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A sibling stream with the same seed and a different index.
    pub fn split(&self, stream: u64) -> RngStream {
        RngStream::new(self.seed, stream)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        // 53 random mantissa bits.
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by rejection (no modulo bias).
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.inner.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// Bernoulli(p).
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}
