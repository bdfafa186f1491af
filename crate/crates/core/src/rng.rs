//! Reproducible random draws.
//!
//! Every stochastic choice goes through [`SearchRng`], a ChaCha8 stream
//! (`rand_chacha` 0.9, seeded with `seed_from_u64`). Draws are mapped from raw
//! `u64` words by the functions below rather than by `rand` distributions, so
//! the sequence for a given seed does not move when distribution code
//! upstream changes.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SearchRng {
    inner: ChaCha8Rng,
}

impl SearchRng {
    pub fn seed_from_u64(seed: u64) -> Self {
        SearchRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    pub fn unit_half_open(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, upper]`: draws from `[0, 1)`, rejects exact zeros, and
    /// scales by `upper`.
    pub fn real_up_to(&mut self, upper: f64) -> f64 {
        loop {
            let u = self.unit_half_open();
            if u > 0.0 {
                return u * upper;
            }
        }
    }

    /// Uniform on `0..n` by widening multiplication with rejection.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot draw from an empty range");
        let n = n as u64;
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as usize;
            }
        }
    }

    /// Two distinct values from `0..n`, in draw order.
    pub fn distinct_pair(&mut self, n: usize) -> (usize, usize) {
        assert!(n >= 2, "need at least two values");
        let first = self.index(n);
        let mut second = self.index(n - 1);
        if second >= first {
            second += 1;
        }
        (first, second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = SearchRng::seed_from_u64(7);
        let mut b = SearchRng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn ranges() {
        let mut rng = SearchRng::seed_from_u64(1);
        for _ in 0..10_000 {
            let u = rng.real_up_to(3.0);
            assert!(u > 0.0 && u <= 3.0);
            assert!(rng.index(5) < 5);
            let (a, b) = rng.distinct_pair(3);
            assert!(a != b && a < 3 && b < 3);
        }
    }

    #[test]
    fn index_is_roughly_uniform() {
        let mut rng = SearchRng::seed_from_u64(3);
        let mut counts = [0usize; 4];
        for _ in 0..40_000 {
            counts[rng.index(4)] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 400.0, "{counts:?}");
        }
    }

    #[test]
    fn pinned_stream() {
        // Guards the reproducibility contract against dependency drift.
        let mut rng = SearchRng::seed_from_u64(0);
        let first: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(
            first,
            [
                13080132717333068652,
                8594738769458413623,
                12896916468484187878
            ]
        );
        let mut rng = SearchRng::seed_from_u64(42);
        assert_eq!(rng.index(10), 6);
        assert_eq!(rng.real_up_to(1.0), 0.950275407672484);
        assert_eq!(rng.index(1000), 427);
    }
}
