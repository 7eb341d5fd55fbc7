//! Rank correlation and two-sample KS machinery.

mod ecdf;
mod exact;
mod kendall;
mod ks;
mod montecarlo;
mod summary;

pub use ecdf::{ecdf, Ecdf};
pub use exact::{
    ks_exact_survival, ks_pvalue_exact, ks_pvalue_exact_tied, ks_pvalue_exact_with_budget,
    DEFAULT_EXACT_BUDGET,
};
pub use kendall::{kendall_counts, kendall_tau_b, TauCounts, TauRecord};
pub use ks::{
    kolmogorov_q, ks_distance, ks_pvalue_asymptotic, ks_statistic, ks_test, ks_threshold, Decision,
    KsDistance, KsOptions, KsResult, PMethod, PMethodUsed,
};
pub use montecarlo::{ks_pvalue_montecarlo, MonteCarloEstimate, MIN_MC_TRIALS};
pub use summary::{summarize, Summary};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) fn check_finite<F: Scalar>(sample: &[F]) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Sorts finite values ascending.
pub(crate) fn sorted<F: Scalar>(sample: &[F]) -> Vec<F> {
    let mut v = sample.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values are comparable"));
    v
}
