//! Hierarchical seeding.
//!
//! Every random quantity in a simulation is drawn from a ChaCha8 stream keyed
//! by a path of integers below the user's root seed, e.g.
//! `[layout, STREETS]` or `[layout, STATIONS, street]`. Streams with distinct
//! paths are independent, so results never depend on evaluation order or on
//! how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TAG_STREETS: u64 = 0x5354_5245;
pub const TAG_STATIONS: u64 = 0x4253_5354;
pub const TAG_FADING: u64 = 0x4641_4445;
pub const TAG_GRID_OFFSET: u64 = 0x4f46_4653;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic RNG for the node `path` below `root`.
pub fn substream(root: u64, path: &[u64]) -> ChaCha8Rng {
    let mut h = splitmix64(root);
    for &p in path {
        h = splitmix64(h ^ splitmix64(p.wrapping_add(0x632b_e59b_d9b4_e019)));
    }
    let mut seed = [0u8; 32];
    let mut state = h;
    for chunk in seed.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}

/// A 64-bit seed for the node `path`, for APIs that take a plain seed.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    use rand::RngCore;
    substream(root, path).next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_path_same_stream() {
        let a: Vec<u64> = substream(7, &[1, 2]).random_iter().take(4).collect();
        let b: Vec<u64> = substream(7, &[1, 2]).random_iter().take(4).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_paths_differ() {
        let a: u64 = substream(7, &[1, 2]).random();
        let b: u64 = substream(7, &[2, 1]).random();
        let c: u64 = substream(7, &[1]).random();
        let d: u64 = substream(8, &[1, 2]).random();
        assert!(a != b && a != c && a != d && b != c);
    }
}
