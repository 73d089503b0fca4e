//! Per-trial random stream derivation.
//!
//! Every Monte Carlo trial owns independent ChaCha8 streams derived from
//! `(master_seed, purpose, substream, trial_index)`:
//!
//! * the 256-bit key is four successive SplitMix64 outputs started from
//!   `master_seed ^ splitmix64(purpose << 32 | substream)`;
//! * the ChaCha stream id is `trial_index`.
//!
//! Trials therefore never share state, and any evaluation order or worker
//! count yields the same draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for. Kept distinct so that, for example, fading
/// draws never perturb the sampled geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    Geometry = 1,
    Uplink = 2,
    Coverage = 3,
    Access = 4,
}

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(master_seed: u64, purpose: Purpose, substream: u32, trial_index: u64) -> ChaCha8Rng {
    let mut tag = ((purpose as u64) << 32) | substream as u64;
    let mut state = master_seed ^ splitmix64(&mut tag);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial_index);
    rng
}
