//! Rarity of positive triple-square sets under a uniform model: the chance
//! that three ordered uniforms `0 < y₁ < y₂ < y₃ < 1` satisfy
//! `y₁² + y₂² + y₃² > 2`.
//!
//! Closed form `(π(8√2 − 15) + 12)/72`, which is one sixth of the unit-cube
//! volume outside the sphere of radius √2, plus a seeded Monte Carlo check.
//!
//! Monte Carlo samples are drawn in fixed chunks of [`CHUNK`] points. Chunk
//! `k` uses ChaCha8 seeded with `seed` on stream `k`, and each coordinate is
//! a 53-bit uniform in `[0, 1)`. Counts are summed over chunks, so results
//! are identical on every platform and for every thread count.

use std::f64::consts::{PI, SQRT_2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
}

impl ProbEstimate {
    fn exact(value: f64) -> Self {
        ProbEstimate {
            value,
            std_error: 0.0,
            samples: 0,
        }
    }

    fn binomial(hits: u64, samples: u64, scale: f64) -> Self {
        let p = hits as f64 / samples as f64;
        ProbEstimate {
            value: p * scale,
            std_error: (p * (1.0 - p) / samples as f64).sqrt() * scale,
            samples,
        }
    }

    /// `|self − other|` in units of the combined standard error.
    pub fn z_score(&self, other: &ProbEstimate) -> f64 {
        let se = self.std_error.hypot(other.std_error);
        (self.value - other.value).abs() / se
    }
}

/// `(π(8√2 − 15) + 12) / 72 ≈ 0.0058220`
pub fn closed_form() -> f64 {
    (PI * (8.0 * SQRT_2 - 15.0) + 12.0) / 72.0
}

/// Volume inside both the unit cube and the sphere `y₁² + y₂² + y₃² = 2`:
/// `π/4 + π(1 − 2√2/3)`.
pub fn cube_sphere_volume() -> f64 {
    PI / 4.0 + PI * (1.0 - 2.0 * SQRT_2 / 3.0)
}

pub fn closed_form_estimate() -> ProbEstimate {
    ProbEstimate::exact(closed_form())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    /// Fraction of points with `y₁ < y₂ < y₃` and `Σy² > 2`.
    pub ordered: ProbEstimate,
    /// One sixth of the fraction of points with `Σy² > 2`.
    pub symmetric: ProbEstimate,
    /// Fraction of points with `Σy² ≤ 2`; estimates [`cube_sphere_volume`].
    pub inside: ProbEstimate,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    ordered: u64,
    outside: u64,
}

fn sample_chunk(seed: u64, chunk: u64, len: u64) -> Counts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut counts = Counts::default();
    for _ in 0..len {
        let y1: f64 = rng.random();
        let y2: f64 = rng.random();
        let y3: f64 = rng.random();
        if y1 * y1 + y2 * y2 + y3 * y3 > 2.0 {
            counts.outside += 1;
            if y1 < y2 && y2 < y3 {
                counts.ordered += 1;
            }
        }
    }
    counts
}

/// Estimates the ordered-outside probability two ways from the same
/// `samples` points. Chunks run on the current rayon pool.
pub fn monte_carlo(samples: u64, seed: u64) -> Result<MonteCarlo> {
    if samples == 0 {
        return Err(Error::domain("monte_carlo", samples, "samples >= 1"));
    }
    let chunks = samples.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|k| sample_chunk(seed, k, CHUNK.min(samples - k * CHUNK)))
        .reduce(Counts::default, |a, b| Counts {
            ordered: a.ordered + b.ordered,
            outside: a.outside + b.outside,
        });
    Ok(MonteCarlo {
        ordered: ProbEstimate::binomial(counts.ordered, samples, 1.0),
        symmetric: ProbEstimate::binomial(counts.outside, samples, 1.0 / 6.0),
        inside: ProbEstimate::binomial(samples - counts.outside, samples, 1.0),
    })
}
