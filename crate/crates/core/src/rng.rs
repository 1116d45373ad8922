//! Counter-based random streams.
//!
//! Every replicate owns a ChaCha8 stream keyed by `(seed, family)` and
//! selected by its index, so results do not depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream families sharing one user seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Replicate = 1,
    Calibration = 2,
    Auxiliary = 3,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Generator for replicate `index` of `family` under `seed`.
pub fn stream(seed: u64, family: Family, index: u64) -> ChaCha8Rng {
    let key = splitmix64(seed ^ splitmix64(family as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}
