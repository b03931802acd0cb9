//! Seeded random streams.
//!
//! Every randomized routine takes a master seed and asks for the stream of a
//! particular start or sample index. Streams are ChaCha8 keyed by the seed with
//! the index as stream id, so results never depend on evaluation order or on
//! how work is split across threads.

use alloc::vec::Vec;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream `index` of the generator keyed by `seed`.
pub fn stream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    Stream { rng, spare: None }
}

/// A counter-based random stream with the handful of draws the crate needs.
pub struct Stream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Stream {
    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via the polar Box–Muller method.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let x = 2.0 * self.uniform() - 1.0;
            let y = 2.0 * self.uniform() - 1.0;
            let s = x * x + y * y;
            if s > 0.0 && s < 1.0 {
                let m = libm::sqrt(-2.0 * libm::log(s) / s);
                self.spare = Some(y * m);
                return x * m;
            }
        }
    }

    pub fn normal_vec(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.normal()).collect()
    }

    /// Uniformly distributed point on the unit sphere in `R^n`.
    pub fn unit_vec(&mut self, n: usize) -> Vec<f64> {
        loop {
            let mut v = self.normal_vec(n);
            let norm = crate::linalg::norm(&v);
            if norm > 1e-12 {
                v.iter_mut().for_each(|x| *x /= norm);
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..4).map(|_| stream(7, 3).uniform()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut s1 = stream(7, 3);
        let mut s2 = stream(7, 4);
        assert_ne!(s1.uniform(), s2.uniform());
    }

    #[test]
    fn normal_moments_are_plausible() {
        let mut s = stream(1, 0);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| s.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }
}
