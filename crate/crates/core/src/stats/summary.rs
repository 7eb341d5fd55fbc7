use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary<F> {
    pub mean: F,
    /// Population standard deviation (divides by the sample size).
    pub std: F,
}

pub fn summarize<F: Scalar>(sample: &[F]) -> Result<Summary<F>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let len = F::from_count(sample.len() as u64);
    let mean = sample.iter().fold(F::zero(), |acc, &v| acc + v) / len;
    let var = sample
        .iter()
        .fold(F::zero(), |acc, &v| acc + (v - mean) * (v - mean))
        / len;
    Ok(Summary {
        mean,
        std: var.sqrt(),
    })
}
