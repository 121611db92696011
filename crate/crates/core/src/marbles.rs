//! Monte-Carlo sampler for the classical marble experiment.
//!
//! One trial:
//!
//! 1. The primary box holds one white and one black marble; a fair draw
//!    decides which side receives white.
//! 2. Each side then keeps its colour with probability `cos²θ` (angle of that
//!    side) and flips it otherwise. In [`SamplingMode::Quantized`] the keep
//!    probability is the white fraction of an integer [`MarbleBox`].
//! 3. White reads as lamp on (`y`), black as lamp off (`n`).
//!
//! `swap_right` exchanges the two right-hand boxes, so the right side keeps
//! its colour with probability `sin²β` instead.
//!
//! # Random streams
//!
//! All randomness for a run comes from one ChaCha8 keystream keyed by
//! `ChaCha8Rng::seed_from_u64(seed)`. Trial `i` reads exactly
//! [`WORDS_PER_TRIAL`] 32-bit words starting at word `i * WORDS_PER_TRIAL`, so
//! its outcome depends only on `(seed, i)`. Serial and chunked parallel runs
//! therefore produce identical counts.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell::{classical_probabilities, Event, EventProbabilities};
use crate::error::{Error, Result};
use crate::quantum::Angle;

/// Box size used for the quantized mode by default (17 white / 3 black at π/8).
pub const DEFAULT_BOX_SIZE: u32 = 20;

/// Three uniform `f64` draws of 64 bits each.
pub const WORDS_PER_TRIAL: u128 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarbleBox {
    pub white: u32,
    pub black: u32,
}

impl MarbleBox {
    pub fn new(white: u32, black: u32) -> Result<Self> {
        if white + black == 0 {
            return Err(Error::EmptyBox);
        }
        Ok(MarbleBox { white, black })
    }

    pub fn total(&self) -> u32 {
        self.white + self.black
    }

    pub fn white_probability(&self) -> f64 {
        self.white as f64 / self.total() as f64
    }

    /// The box with colours exchanged.
    pub fn complement(&self) -> MarbleBox {
        MarbleBox {
            white: self.black,
            black: self.white,
        }
    }
}

/// Box whose white fraction approximates `cos²θ`; rounding is half away
/// from zero.
pub fn local_box(theta: Angle, box_size: u32) -> Result<MarbleBox> {
    if box_size == 0 {
        return Err(Error::EmptyBox);
    }
    let white = (box_size as f64 * theta.cos().powi(2)).round() as u32;
    let white = white.min(box_size);
    MarbleBox::new(white, box_size - white)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Bernoulli steps with the exact `cos²θ` keep probability.
    Exact,
    /// Draws from integer boxes of the given size.
    Quantized { box_size: u32 },
}

impl SamplingMode {
    pub fn label(&self) -> &'static str {
        match self {
            SamplingMode::Exact => "exact",
            SamplingMode::Quantized { .. } => "quantized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarbleProtocol {
    pub alpha: Angle,
    pub beta: Angle,
    pub mode: SamplingMode,
    pub swap_right: bool,
}

impl MarbleProtocol {
    pub fn exact(alpha: Angle, beta: Angle) -> Self {
        MarbleProtocol {
            alpha,
            beta,
            mode: SamplingMode::Exact,
            swap_right: false,
        }
    }

    pub fn quantized(alpha: Angle, beta: Angle, box_size: u32) -> Self {
        MarbleProtocol {
            alpha,
            beta,
            mode: SamplingMode::Quantized { box_size },
            swap_right: false,
        }
    }

    pub fn with_swap(mut self, swap_right: bool) -> Self {
        self.swap_right = swap_right;
        self
    }

    /// Probabilities that side A and side B keep their primary colour.
    pub fn keep_probabilities(&self) -> Result<(f64, f64)> {
        let keep = |theta: Angle| -> Result<f64> {
            match self.mode {
                SamplingMode::Exact => Ok(theta.cos().powi(2)),
                SamplingMode::Quantized { box_size } => {
                    Ok(local_box(theta, box_size)?.white_probability())
                }
            }
        };
        let left = keep(self.alpha)?;
        let right = keep(self.beta)?;
        Ok((left, if self.swap_right { 1.0 - right } else { right }))
    }
}

/// Random stream positioned at the start of trial `trial_index`.
pub fn trial_stream(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(trial_index as u128 * WORDS_PER_TRIAL);
    rng
}

fn sample<R: RngCore>(keep: (f64, f64), rng: &mut R) -> Event {
    let left_white = rng.random::<f64>() < 0.5;
    let left_keeps = rng.random::<f64>() < keep.0;
    let right_keeps = rng.random::<f64>() < keep.1;
    let a_on = left_white == left_keeps;
    let b_on = !left_white == right_keeps;
    Event::from_sides(a_on, b_on)
}

/// Runs one trial, consuming exactly [`WORDS_PER_TRIAL`] words from `rng`.
pub fn run_trial<R: RngCore>(protocol: &MarbleProtocol, rng: &mut R) -> Result<Event> {
    Ok(sample(protocol.keep_probabilities()?, rng))
}

/// Frequency estimate from a seeded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EstimationReport {
    pub protocol_mode: SamplingMode,
    pub trials: u64,
    pub seed: u64,
    /// Counts in `(yy, yn, ny, nn)` order.
    pub counts: [u64; 4],
}

impl EstimationReport {
    pub fn count(&self, event: Event) -> u64 {
        self.counts[event.index()]
    }

    pub fn probabilities(&self) -> EventProbabilities {
        EventProbabilities::from_raw(self.counts.map(|c| c as f64 / self.trials as f64))
    }

    /// `sqrt(p̂(1−p̂)/N)` per event.
    pub fn standard_errors(&self) -> [f64; 4] {
        let n = self.trials as f64;
        self.probabilities()
            .values()
            .map(|p| (p * (1.0 - p) / n).sqrt())
    }

    pub fn correlation(&self) -> f64 {
        let k: i128 = Event::ALL
            .iter()
            .map(|&e| e.parity() as i128 * self.count(e) as i128)
            .sum();
        k as f64 / self.trials as f64
    }

    /// Standard error of the empirical correlation, `sqrt((1 − K̂²)/N)`.
    pub fn correlation_standard_error(&self) -> f64 {
        let k = self.correlation();
        ((1.0 - k * k).max(0.0) / self.trials as f64).sqrt()
    }
}

fn count_range(keep: (f64, f64), seed: u64, start: u64, end: u64) -> [u64; 4] {
    let mut rng = trial_stream(seed, start);
    let mut counts = [0u64; 4];
    for _ in start..end {
        counts[sample(keep, &mut rng).index()] += 1;
    }
    counts
}

/// Serial estimate over `trials` trials.
pub fn estimate(protocol: &MarbleProtocol, trials: u64, seed: u64) -> Result<EstimationReport> {
    if trials < 1 {
        return Err(Error::ZeroTrials);
    }
    let keep = protocol.keep_probabilities()?;
    Ok(EstimationReport {
        protocol_mode: protocol.mode,
        trials,
        seed,
        counts: count_range(keep, seed, 0, trials),
    })
}

/// Trials per work unit in [`estimate_parallel`].
pub const PARALLEL_CHUNK: u64 = 16_384;

/// Same result as [`estimate`], with trials split into chunks across threads.
pub fn estimate_parallel(
    protocol: &MarbleProtocol,
    trials: u64,
    seed: u64,
) -> Result<EstimationReport> {
    if trials < 1 {
        return Err(Error::ZeroTrials);
    }
    let keep = protocol.keep_probabilities()?;
    let chunks = trials.div_ceil(PARALLEL_CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * PARALLEL_CHUNK;
            count_range(keep, seed, start, (start + PARALLEL_CHUNK).min(trials))
        })
        .reduce(|| [0u64; 4], |a, b| std::array::from_fn(|i| a[i] + b[i]));
    Ok(EstimationReport {
        protocol_mode: protocol.mode,
        trials,
        seed,
        counts,
    })
}

/// Exact event probabilities of the sampling chain, by enumerating the primary
/// assignment and both local keep/flip outcomes.
pub fn exact_chain_probabilities(protocol: &MarbleProtocol) -> Result<EventProbabilities> {
    let (keep_a, keep_b) = protocol.keep_probabilities()?;
    let mut p = [0.0; 4];
    for left_white in [true, false] {
        for (left_keeps, pa) in [(true, keep_a), (false, 1.0 - keep_a)] {
            for (right_keeps, pb) in [(true, keep_b), (false, 1.0 - keep_b)] {
                let a_on = left_white == left_keeps;
                let b_on = !left_white == right_keeps;
                p[Event::from_sides(a_on, b_on).index()] += 0.5 * pa * pb;
            }
        }
    }
    Ok(EventProbabilities::from_raw(p))
}

/// Closed-form classical probabilities the chain reproduces in exact mode.
/// With `swap_right` the right angle enters as `β + π/2`.
pub fn classical_reference(protocol: &MarbleProtocol) -> EventProbabilities {
    let beta = if protocol.swap_right {
        protocol.beta + Angle::new(std::f64::consts::FRAC_PI_2)
    } else {
        protocol.beta
    };
    classical_probabilities(protocol.alpha, beta)
}
