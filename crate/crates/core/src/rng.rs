//! Deterministic random number generation.
//!
//! Every random quantity in this crate flows from an explicit 64-bit seed
//! through [`SplitMix64`]. The generator and all derived samplers are pinned
//! down here, constants included, so another implementation in any language
//! can reproduce the exact same sequences:
//!
//! * state update: `state = state + 0x9E3779B97F4A7C15` (mod 2^64);
//! * output mix of the new state `z`:
//!   `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!   z *= 0x94D049BB133111EB; z ^= z >> 31` (all mod 2^64);
//! * uniform in `[0,1)`: `(next_u64() >> 11) * 2^-53`;
//! * standard normal: Box-Muller on two consecutive outputs,
//!   `u1 = ((x1 >> 11) + 1) * 2^-53` in `(0,1]`, `u2 = (x2 >> 11) * 2^-53`,
//!   value `sqrt(-2 ln u1) * cos(2 pi u2)`; exactly two outputs per draw,
//!   the sine branch is discarded;
//! * `k` distinct indices out of `{0,..,n-1}`: partial Fisher-Yates, step `i`
//!   swaps positions `i` and `i + next_u64() % (n - i)` of the identity
//!   permutation and the first `k` slots are returned in draw order;
//! * substream `k` of seed `s`: a fresh generator with initial state
//!   `mix(s) ^ mix(k + 1)` where `mix` is the output mix above.
//!
//! Substreams make trial-indexed experiments schedule independent: trial `k`
//! reads only from `substream(seed, k)`, so a parallel driver produces the
//! same results as a sequential one.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator with the standard constants.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for trial `index` under the same seed.
    pub fn substream(seed: u64, index: u64) -> Self {
        SplitMix64 {
            state: mix(seed) ^ mix(index.wrapping_add(1)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; consumes exactly two outputs.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Rademacher draw: +1.0 or -1.0 from the low bit.
    pub fn next_pm1(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `count` distinct indices from `{0,..,n-1}` by partial Fisher-Yates,
    /// returned in draw order.
    pub fn sample_distinct(&mut self, n: usize, count: usize) -> Vec<usize> {
        assert!(count <= n, "cannot draw {count} distinct indices out of {n}");
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..count {
            let j = i + (self.next_u64() % (n - i) as u64) as usize;
            idx.swap(i, j);
        }
        idx.truncate(count);
        idx
    }
}
