use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Pair counts behind one tau-b value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauCounts {
    pub n_concordant: u64,
    pub n_discordant: u64,
    /// N(N-1)/2.
    pub n0: u64,
    /// Pairs tied in x (sum of t(t-1)/2 over tie groups).
    pub n1: u64,
    /// Pairs tied in y.
    pub n2: u64,
    /// Pairs tied in x or in y.
    pub n_xy_tied: u64,
}

impl TauCounts {
    /// Tau-b from the counts; `None` when either vector is fully tied.
    pub fn tau<F: Scalar>(&self) -> Option<F> {
        if self.n1 == self.n0 || self.n2 == self.n0 {
            return None;
        }
        let numerator = self.n_concordant as f64 - self.n_discordant as f64;
        let denominator = ((self.n0 - self.n1) as f64 * (self.n0 - self.n2) as f64).sqrt();
        let numerator = F::lit(numerator);
        let denominator = F::lit(denominator);
        Some((numerator / denominator).max(-F::one()).min(F::one()))
    }
}

/// A Kendall tau-b measurement together with its pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauRecord<F> {
    pub tau: F,
    #[serde(flatten)]
    pub counts: TauCounts,
}

/// Counts concordant, discordant and tied pairs by direct enumeration.
pub fn kendall_counts<T: PartialOrd>(x: &[T], y: &[T]) -> Result<TauCounts> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooShort(n));
    }

    let mut c = TauCounts {
        n_concordant: 0,
        n_discordant: 0,
        n0: (n * (n - 1) / 2) as u64,
        n1: 0,
        n2: 0,
        n_xy_tied: 0,
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = x[i].partial_cmp(&x[j]).ok_or(Error::NonFinite)?;
            let dy = y[i].partial_cmp(&y[j]).ok_or(Error::NonFinite)?;
            let tied_x = dx == Ordering::Equal;
            let tied_y = dy == Ordering::Equal;
            c.n1 += tied_x as u64;
            c.n2 += tied_y as u64;
            if tied_x || tied_y {
                c.n_xy_tied += 1;
            } else if dx == dy {
                c.n_concordant += 1;
            } else {
                c.n_discordant += 1;
            }
        }
    }
    Ok(c)
}

/// Kendall tau-b with tie adjustment.
///
/// Tau is derived from integer counts only, so inputs with equal counts yield
/// bit-identical results and the function is exactly symmetric.
pub fn kendall_tau_b<T: PartialOrd, F: Scalar>(x: &[T], y: &[T]) -> Result<TauRecord<F>> {
    let counts = kendall_counts(x, y)?;
    if counts.n1 == counts.n0 {
        return Err(Error::DegenerateVector("x"));
    }
    if counts.n2 == counts.n0 {
        return Err(Error::DegenerateVector("y"));
    }
    let tau = counts.tau().expect("non-degenerate counts");
    Ok(TauRecord { tau, counts })
}
