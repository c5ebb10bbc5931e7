//! Seeded randomness: the per-run seed mixer and a wrapper that counts how
//! many raw draws each pipeline stage consumes, so transcripts can record
//! them.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// splitmix64; the documented mixing function behind per-run seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for run `run_index` of a multi-run invocation under `master_seed`.
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    splitmix64(master_seed ^ run_index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A ChaCha stream that counts raw draw calls. The count is monotone; stages
/// record deltas.
pub struct CountingRng {
    inner: ChaCha8Rng,
    draws: u64,
}

impl CountingRng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }
}

impl RngCore for CountingRng {
    fn next_u32(&mut self) -> u32 {
        self.draws += 1;
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.draws += 1;
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.draws += 1;
        self.inner.try_fill_bytes(dest)
    }
}
