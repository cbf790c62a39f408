//! Counter-based pseudo-random generator used by all instance and start
//! generation, so that instances are reproducible byte-exactly from a 64-bit
//! seed in any language.
//!
//! # Exact specification
//!
//! The raw stream is the splitmix64 sequence: with a 64-bit `seed` and
//! one-based counter `k` (all arithmetic mod 2^64),
//!
//! ```text
//! state_k = seed + k * 0x9E3779B97F4A7C15
//! z = state_k
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output_k = z ^ (z >> 31)
//! ```
//!
//! Uniform doubles in (0, 1) take the top 53 bits:
//! `u_k = ((output_k >> 11) + 0.5) * 2^-53`.
//!
//! Standard normals use the Box-Muller transform on consecutive uniforms
//! `(u_{2j-1}, u_{2j})`:
//!
//! ```text
//! r = sqrt(-2 ln u_{2j-1})
//! z_{2j-1} = r cos(2 pi u_{2j})
//! z_{2j}   = r sin(2 pi u_{2j})
//! ```
//!
//! Both outputs of each pair are consumed in order. Every draw advances the
//! counter deterministically; there is no rejection step.

use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
    /// Second Box-Muller output, pending from the previous normal draw.
    pending_normal: Option<f64>,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng {
            seed,
            counter: 0,
            pending_normal: None,
        }
    }

    /// Raw 64-bit output for the next counter value.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        let mut z = self
            .seed
            .wrapping_add(self.counter.wrapping_mul(0x9E3779B97F4A7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)` by Lemire-style widening multiply
    /// without rejection; the bias is below 2^-40 for bounds under 2^24.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (((self.next_u64() as u128) * (bound as u128)) >> 64) as usize
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.pending_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * PI * u2;
        self.pending_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Uniform random size-k subset of `{0..n}`, sorted, via partial
    /// Fisher-Yates on the index array.
    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        debug_assert!(k <= n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below(n - i);
            idx.swap(i, j);
        }
        let mut chosen = idx[..k].to_vec();
        chosen.sort_unstable();
        chosen
    }
}
