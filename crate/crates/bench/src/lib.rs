//! Fixtures shared by the criterion benchmarks.

use picalc_core::Natural;

/// Deterministic pseudo-random natural with exactly `limbs` limbs.
pub fn sample_natural(limbs: usize, seed: u64) -> Natural {
    let mut state = seed ^ 0x9E37_79B9_7F4A_7C15;
    let mut next = move || {
        // splitmix64
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let mut v: Vec<u64> = (0..limbs).map(|_| next()).collect();
    if let Some(top) = v.last_mut() {
        *top |= 1 << 63;
    }
    Natural::from_limbs(v)
}
