//! Deterministic randomness.
//!
//! Everything random in this crate flows through [`SplitMix64`], a 64-bit
//! counter-based generator (Steele, Lea, Flood 2014). Stream splitting is
//! explicit: a substream is keyed by hashing the user seed together with a
//! list of integer tags (for the harness: `[n, trial, role]` or
//! `[n, trial, pair, role]`). Two runs with the same seed and parameters
//! therefore produce byte-identical output regardless of scheduling.

/// User-facing 64-bit seed. Identical seed + parameters implies identical
/// generated objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the 64-bit key of a substream from a seed and an ordered tag list.
pub fn stream_key(seed: Seed, tags: &[u64]) -> u64 {
    let mut s = mix(seed.0 ^ GOLDEN);
    for &t in tags {
        s = mix(s.wrapping_add(GOLDEN).wrapping_add(t));
    }
    s
}

/// SplitMix64: state advances by a fixed increment (a counter), output is a
/// bijective finalizer of the state. Period 2^64 per stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(key: u64) -> Self {
        SplitMix64 { state: key }
    }

    /// Substream generator for `(seed, tags)`.
    pub fn substream(seed: Seed, tags: &[u64]) -> Self {
        SplitMix64::new(stream_key(seed, tags))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform f64 in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, bound), bias-free by rejection.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "next_below bound must be positive");
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Geometric skip count: number of failures before the first success of
    /// a Bernoulli(p) sequence, 0 < p < 1. Used by the sparse G(n,p) sampler.
    pub fn geometric_skip(&mut self, p: f64) -> u64 {
        debug_assert!(p > 0.0 && p < 1.0);
        let u = self.next_f64();
        // floor(log(1-u) / log(1-p)); 1-u in (0,1] so the log is finite.
        let k = ((1.0 - u).ln() / (1.0 - p).ln()).floor();
        if k < 0.0 {
            0
        } else if k >= u64::MAX as f64 {
            u64::MAX
        } else {
            k as u64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let mut a = SplitMix64::substream(Seed(42), &[1, 2, 3]);
        let mut b = SplitMix64::substream(Seed(42), &[1, 2, 3]);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn tag_order_matters() {
        assert_ne!(
            stream_key(Seed(7), &[1, 2]),
            stream_key(Seed(7), &[2, 1]),
        );
        assert_ne!(stream_key(Seed(7), &[1]), stream_key(Seed(8), &[1]));
    }

    #[test]
    fn next_below_is_in_range_and_hits_all_residues() {
        let mut rng = SplitMix64::new(1);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            let x = rng.next_below(7);
            assert!(x < 7);
            seen[x as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn f64_unit_interval() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..10_000 {
            let x = rng.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn geometric_skip_mean_close_to_inverse_p() {
        let mut rng = SplitMix64::new(5);
        let p = 0.01;
        let n = 20_000;
        let total: u64 = (0..n).map(|_| rng.geometric_skip(p)).sum();
        let mean = total as f64 / n as f64;
        // E = (1-p)/p = 99; allow 5%.
        assert!((mean - 99.0).abs() < 5.0, "mean {mean}");
    }
}
