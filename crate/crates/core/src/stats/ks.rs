use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::exact::{ks_exact_survival, ks_pvalue_exact_tied, DEFAULT_EXACT_BUDGET};
use super::montecarlo::ks_pvalue_montecarlo;
use super::{check_finite, sorted};

/// Two-sample KS distance kept as the integer `max |i*m - j*n|`, so that
/// `D = scaled / (n*m)` is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsDistance<F> {
    pub scaled: u64,
    pub n: usize,
    pub m: usize,
    /// First pooled value at which the supremum is attained.
    pub location: F,
}

impl<F: Scalar> KsDistance<F> {
    pub fn value(&self) -> F {
        F::from_count(self.scaled) / (F::from_count(self.n as u64) * F::from_count(self.m as u64))
    }
}

/// Per distinct pooled value (ascending): how many points of each sample sit there.
pub(crate) fn tie_blocks<F: Scalar>(a: &[F], b: &[F]) -> Vec<(F, usize, usize)> {
    let a = sorted(a);
    let b = sorted(b);
    let (mut i, mut j) = (0, 0);
    let mut blocks = Vec::new();
    while i < a.len() || j < b.len() {
        let v = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.min(*y),
            (Some(x), None) => *x,
            (None, Some(y)) => *y,
            (None, None) => unreachable!(),
        };
        let (i0, j0) = (i, j);
        while i < a.len() && a[i] == v {
            i += 1;
        }
        while j < b.len() && b[j] == v {
            j += 1;
        }
        blocks.push((v, i - i0, j - j0));
    }
    blocks
}

/// Largest ECDF gap, evaluated after all values equal to each pooled point
/// have been consumed.
pub fn ks_distance<F: Scalar>(a: &[F], b: &[F]) -> Result<KsDistance<F>> {
    check_finite(a)?;
    check_finite(b)?;
    let (n, m) = (a.len(), b.len());
    let mut best = KsDistance {
        scaled: 0,
        n,
        m,
        location: F::zero(),
    };
    let (mut i, mut j) = (0u64, 0u64);
    let mut first = true;
    for (v, da, db) in tie_blocks(a, b) {
        i += da as u64;
        j += db as u64;
        let gap = (i * m as u64).abs_diff(j * n as u64);
        if first || gap > best.scaled {
            best.scaled = gap;
            best.location = v;
            first = false;
        }
    }
    Ok(best)
}

pub fn ks_statistic<F: Scalar>(a: &[F], b: &[F]) -> Result<F> {
    ks_distance(a, b).map(|d| d.value())
}

/// Critical distance above which equality of distributions is rejected at `alpha`.
pub fn ks_threshold<F: Scalar>(alpha: F, n: usize, m: usize) -> Result<F> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(Error::InvalidAlpha(alpha.to_f64_lossy()));
    }
    if n == 0 || m == 0 {
        return Err(Error::InvalidSize { n, m });
    }
    let two = F::lit(2.0);
    let n_f = F::from_count(n as u64);
    let m_f = F::from_count(m as u64);
    Ok((-(alpha / two).ln() * (F::one() + m_f / n_f) / (two * m_f)).sqrt())
}

/// Kolmogorov survival function `Q(lambda) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2)`.
///
/// For small `lambda` the alternating series converges slowly, so the
/// equivalent theta-function form `1 - sqrt(2 pi)/lambda * sum exp(-(2k-1)^2 pi^2 / (8 lambda^2))`
/// is used there. Both are truncated once a term drops below 1e-12.
pub fn kolmogorov_q<F: Scalar>(lambda: F) -> F {
    const TERM_EPS: f64 = 1e-12;
    const MAX_TERMS: u32 = 10_000;
    let lambda = lambda.to_f64_lossy();
    if lambda <= 0.0 {
        return F::one();
    }
    let q = if lambda < 1.18 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut sum = 0.0;
        for k in 1..=MAX_TERMS {
            let odd = (2 * k - 1) as f64;
            let term = (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp();
            sum += term;
            if term < TERM_EPS {
                break;
            }
        }
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * sum
    } else {
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1..=MAX_TERMS {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += sign * term;
            if term < TERM_EPS {
                break;
            }
            sign = -sign;
        }
        2.0 * sum
    };
    F::lit(q.clamp(0.0, 1.0))
}

/// Large-sample p-value `Q(d * sqrt(n m / (n + m)))`.
pub fn ks_pvalue_asymptotic<F: Scalar>(d: F, n: usize, m: usize) -> Result<F> {
    check_d(d)?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidSize { n, m });
    }
    let (n_f, m_f) = (F::from_count(n as u64), F::from_count(m as u64));
    Ok(kolmogorov_q(d * (n_f * m_f / (n_f + m_f)).sqrt()))
}

pub(crate) fn check_d<F: Scalar>(d: F) -> Result<()> {
    if d >= F::zero() && d <= F::one() {
        Ok(())
    } else {
        Err(Error::InvalidD(d.to_f64_lossy()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    AcceptNull,
    RejectNull,
}

impl Decision {
    pub fn from_reject(reject: bool) -> Self {
        if reject {
            Decision::RejectNull
        } else {
            Decision::AcceptNull
        }
    }
}

/// Requested p-value routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PMethod {
    Exact,
    Asymptotic,
    #[serde(alias = "monte-carlo", alias = "monte_carlo")]
    MonteCarlo,
    #[default]
    Auto,
}

impl std::str::FromStr for PMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "asymptotic" => Ok(Self::Asymptotic),
            "montecarlo" | "monte-carlo" | "monte_carlo" => Ok(Self::MonteCarlo),
            "auto" => Ok(Self::Auto),
            other => Err(Error::Config(format!("unknown p-method `{other}`"))),
        }
    }
}

/// The p-value routine that actually ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PMethodUsed {
    Exact,
    Asymptotic,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KsOptions<F> {
    pub alpha: F,
    pub method: PMethod,
    /// Largest `n * m` handled by the exact routine.
    pub exact_budget: u64,
    pub mc_trials: usize,
    pub mc_seed: u64,
}

impl<F: Scalar> Default for KsOptions<F> {
    fn default() -> Self {
        Self {
            alpha: F::lit(0.05),
            method: PMethod::Auto,
            exact_budget: DEFAULT_EXACT_BUDGET,
            mc_trials: 100_000,
            mc_seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsResult<F> {
    pub d_statistic: F,
    pub n: usize,
    pub m: usize,
    pub alpha: F,
    pub threshold: F,
    pub p_value: F,
    pub p_method: PMethodUsed,
    /// Outcome of the p-value rule (`p < alpha` rejects).
    pub decision: Decision,
    /// Outcome of the critical-distance rule (`D > threshold` rejects).
    pub threshold_decision: Decision,
    pub rules_agree: bool,
    /// Exact p-value under the continuous null that ignores ties; only set
    /// when the exact routine ran on tied data.
    pub p_value_ignoring_ties: Option<F>,
}

/// Two-sample KS test of `inspecting` against `reference`.
pub fn ks_test<F: Scalar>(
    reference: &[F],
    inspecting: &[F],
    options: &KsOptions<F>,
) -> Result<KsResult<F>> {
    let dist = ks_distance(reference, inspecting)?;
    let (n, m) = (dist.n, dist.m);
    let d = dist.value();
    let threshold = ks_threshold(options.alpha, n, m)?;

    let method = match options.method {
        PMethod::Auto if (n as u64) * (m as u64) <= options.exact_budget => PMethod::Exact,
        PMethod::Auto => PMethod::Asymptotic,
        other => other,
    };
    let mut p_value_ignoring_ties = None;
    let (p_value, p_method) = match method {
        PMethod::Exact => {
            let p = ks_pvalue_exact_tied(reference, inspecting, options.exact_budget)?;
            let has_ties = tie_blocks(reference, inspecting)
                .iter()
                .any(|&(_, da, db)| da + db > 1);
            if has_ties {
                let untied = ks_exact_survival(dist.scaled, n, m, None);
                p_value_ignoring_ties = Some(F::lit(super::exact::ratio_to_f64(&untied)));
            }
            (p, PMethodUsed::Exact)
        }
        PMethod::Asymptotic => (ks_pvalue_asymptotic(d, n, m)?, PMethodUsed::Asymptotic),
        PMethod::MonteCarlo => {
            let est =
                ks_pvalue_montecarlo(reference, inspecting, options.mc_trials, options.mc_seed)?;
            (est.p_value, PMethodUsed::MonteCarlo)
        }
        PMethod::Auto => unreachable!("auto resolved above"),
    };

    let decision = Decision::from_reject(p_value < options.alpha);
    let threshold_decision = Decision::from_reject(d > threshold);
    Ok(KsResult {
        d_statistic: d,
        n,
        m,
        alpha: options.alpha,
        threshold,
        p_value,
        p_method,
        decision,
        threshold_decision,
        rules_agree: decision == threshold_decision,
        p_value_ignoring_ties,
    })
}
