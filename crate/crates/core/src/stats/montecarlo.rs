use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::ks::{ks_distance, tie_blocks};

pub const MIN_MC_TRIALS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate<F> {
    pub p_value: F,
    pub hits: u64,
    pub trials: u64,
    pub seed: u64,
    /// Binomial standard error `sqrt(p (1 - p) / trials)`.
    pub std_error: F,
}

impl<F: Scalar> MonteCarloEstimate<F> {
    /// `p +- k * std_error`, clipped to [0, 1].
    pub fn interval(&self, k: F) -> (F, F) {
        let half = k * self.std_error;
        (
            (self.p_value - half).max(F::zero()),
            (self.p_value + half).min(F::one()),
        )
    }
}

/// Permutation estimate of `P(D >= D_observed)`: the pooled sample is
/// reshuffled `trials` times and split back into sizes `|a|` and `|b|`.
pub fn ks_pvalue_montecarlo<F: Scalar>(
    a: &[F],
    b: &[F],
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate<F>> {
    if trials < MIN_MC_TRIALS {
        return Err(Error::TooFewTrials {
            got: trials,
            min: MIN_MC_TRIALS,
        });
    }
    let observed = ks_distance(a, b)?;
    let (n, m) = (a.len(), b.len());
    let blocks: Vec<usize> = tie_blocks(a, b)
        .into_iter()
        .map(|(_, da, db)| da + db)
        .collect();

    // Labels over the pooled sorted positions; `true` marks the first sample.
    let mut labels: Vec<bool> = std::iter::repeat_n(true, n)
        .chain(std::iter::repeat_n(false, m))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        labels.shuffle(&mut rng);
        if scaled_distance(&labels, &blocks, n, m) >= observed.scaled {
            hits += 1;
        }
    }

    let p = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        p_value: F::lit(p),
        hits,
        trials: trials as u64,
        seed,
        std_error: F::lit((p * (1.0 - p) / trials as f64).sqrt()),
    })
}

fn scaled_distance(labels: &[bool], blocks: &[usize], n: usize, m: usize) -> u64 {
    let (mut i, mut j, mut pos) = (0u64, 0u64, 0usize);
    let mut best = 0;
    for &s in blocks {
        for &first in &labels[pos..pos + s] {
            if first {
                i += 1;
            } else {
                j += 1;
            }
        }
        pos += s;
        best = best.max((i * m as u64).abs_diff(j * n as u64));
    }
    best
}
