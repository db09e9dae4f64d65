//! Seeded, splittable random streams.
//!
//! A stream is keyed by `(seed, domain, index)`. The seed and domain fix a
//! ChaCha8 key and the index selects the ChaCha stream, so stream `i` yields
//! the same numbers no matter which thread draws from it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep unrelated consumers of one master seed apart.
pub mod domain {
    pub const INNER_CODE: u64 = 0x696e_6e65_725f_6765;
    pub const PFAIL: u64 = 0x7066_6169_6c5f_6d63;
    pub const TRIAL: u64 = 0x7472_6961_6c5f_7273;
}

pub fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}
