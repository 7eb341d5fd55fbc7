use crate::error::Result;
use crate::scalar::Scalar;

use super::{check_finite, sorted};

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf<F> {
    jump_points: Vec<F>,
    cumulative_counts: Vec<usize>,
    sample_size: usize,
}

impl<F: Scalar> Ecdf<F> {
    pub fn new(sample: &[F]) -> Result<Self> {
        check_finite(sample)?;
        let values = sorted(sample);
        let mut jump_points = Vec::new();
        let mut cumulative_counts = Vec::new();
        for (i, v) in values.iter().enumerate() {
            if jump_points.last() == Some(v) {
                *cumulative_counts.last_mut().unwrap() = i + 1;
            } else {
                jump_points.push(*v);
                cumulative_counts.push(i + 1);
            }
        }
        Ok(Self {
            jump_points,
            cumulative_counts,
            sample_size: values.len(),
        })
    }

    pub fn jump_points(&self) -> &[F] {
        &self.jump_points
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    pub fn cumulative_fractions(&self) -> Vec<F> {
        self.cumulative_counts
            .iter()
            .map(|&c| self.fraction(c))
            .collect()
    }

    /// Number of sample points `<= x`.
    pub fn count_at(&self, x: F) -> usize {
        let idx = self.jump_points.partition_point(|p| *p <= x);
        if idx == 0 {
            0
        } else {
            self.cumulative_counts[idx - 1]
        }
    }

    pub fn eval(&self, x: F) -> F {
        self.fraction(self.count_at(x))
    }

    fn fraction(&self, count: usize) -> F {
        F::from_count(count as u64) / F::from_count(self.sample_size as u64)
    }
}

/// Convenience wrapper matching the free-function style of the other operations.
pub fn ecdf<F: Scalar>(sample: &[F]) -> Result<Ecdf<F>> {
    Ecdf::new(sample)
}
