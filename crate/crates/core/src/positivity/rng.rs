//! Splitmix64 substreams keyed by `(seed, size, sample, slot)`.

use nalgebra::DMatrix;

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Independent stream for the given key path.
    pub fn keyed(seed: u64, key: &[u64]) -> SplitMix64 {
        let mut s = mix(seed.wrapping_add(GAMMA));
        for &k in key {
            s = mix(s ^ mix(k.wrapping_add(GAMMA)));
        }
        SplitMix64::new(s)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-r, r)`.
    pub fn uniform(&mut self, r: f64) -> f64 {
        r * (2.0 * self.next_f64() - 1.0)
    }

    /// Symmetric `n x n` matrix, upper triangle filled row by row.
    pub fn symmetric_matrix(&mut self, n: usize, r: f64) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.uniform(r);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }
}
