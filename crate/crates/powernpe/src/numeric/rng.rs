//! Seeded, stream-addressable randomness.
//!
//! All randomness in the crate flows through [`RngStream`]; there is no global
//! RNG. A stream is identified by `(seed, stream id)`: distinct ids give
//! statistically independent sequences, and the same `(seed, id, counter)`
//! reproduces bit-identical output. Streams are cheap to fork, which keeps
//! parallel sampling deterministic regardless of scheduling.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    /// Position of the stream in 32-bit words since construction.
    pub fn counter(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// Rewind/advance to an absolute counter position.
    pub fn set_counter(&mut self, counter: u128) {
        self.rng.set_word_pos(counter);
    }

    /// Derives an independent child stream. Children of distinct `id`s (and of
    /// distinct parents) never overlap: the id is folded into the stream word.
    pub fn substream(&self, id: u64) -> RngStream {
        // SplitMix64 finalizer; decorrelates sequential ids.
        let mut z = self.stream ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        RngStream::new(self.seed, z)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        Normal::new(mean, sd).expect("sd must be positive").sample(&mut self.rng)
    }

    pub fn fill_standard_normal(&mut self, out: &mut [f64]) {
        for v in out.iter_mut() {
            *v = self.standard_normal();
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Fisher–Yates shuffle of an index slice.
    pub fn shuffle<T>(&mut self, data: &mut [T]) {
        for i in (1..data.len()).rev() {
            let j = self.rng.random_range(0..=i);
            data.swap(i, j);
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_key_is_bit_identical() {
        let mut a = RngStream::new(7, 3);
        let mut b = RngStream::new(7, 3);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
        }
    }

    #[test]
    fn counter_restores_position() {
        let mut a = RngStream::new(7, 3);
        for _ in 0..17 {
            a.uniform();
        }
        let pos = a.counter();
        let next: Vec<f64> = (0..5).map(|_| a.uniform()).collect();
        a.set_counter(pos);
        let replay: Vec<f64> = (0..5).map(|_| a.uniform()).collect();
        assert_eq!(next, replay);
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RngStream::new(7, 0);
        let mut b = RngStream::new(7, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn substreams_decorrelate() {
        let root = RngStream::new(1, 0);
        let mut seen = std::collections::HashSet::new();
        for id in 0..64 {
            let mut s = root.substream(id);
            assert!(seen.insert(s.next_u64()));
        }
    }
}
