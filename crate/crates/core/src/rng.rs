//! Pinned random source for reproducible states and sphere samples.
//!
//! The generator is PCG64 (`Lcg128Xsl64`) seeded through
//! `SeedableRng::seed_from_u64`. Uniform doubles take the top 53 bits of a
//! `u64`; Gaussians come from the Box–Muller transform, consuming two
//! uniforms per pair of normals. Nothing here depends on `rand`'s
//! distribution code, so a stream is fixed by the seed alone.

use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64;

pub struct SeededRng {
    inner: Pcg64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Pcg64::seed_from_u64(seed),
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A pair of independent standard normals.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        // 1 - u lies in (0, 1], keeping ln away from zero
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        (r * angle.cos(), r * angle.sin())
    }

    /// Uniform point on the unit sphere S² from normalized Gaussians.
    pub fn unit_vector3(&mut self) -> [f64; 3] {
        loop {
            let (a, b) = self.normal_pair();
            let (c, _) = self.normal_pair();
            let norm = (a * a + b * b + c * c).sqrt();
            if norm > 1e-300 {
                return [a / norm, b / norm, c / norm];
            }
        }
    }
}
