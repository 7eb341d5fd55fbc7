//! Exact null distribution of the two-sample KS distance.
//!
//! Under the null every split of the pooled sample into groups of sizes `n`
//! and `m` is equally likely. A split is a monotone lattice path from (0, 0)
//! to (n, m); the path stays strictly inside the band `|i*m - j*n| < k`
//! exactly when the split's scaled distance is below `k`. Counting inside-band
//! paths with big integers gives `P(D >= k / (n m))` as an exact rational.
//!
//! Tied pooled values form blocks that the path crosses in one move (any mix
//! of the block's members may come from either sample, weighted by the
//! binomial number of ways), and the band is only checked between blocks.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::ks::{check_d, ks_distance, tie_blocks};

/// Default cap on `n * m` for the exact routine.
pub const DEFAULT_EXACT_BUDGET: u64 = 10_000;

/// Relative slack when mapping a floating distance onto the `1/(n m)` grid.
const GRID_EPS: f64 = 1e-6;

fn binomial_row(s: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(s + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for t in 1..=s {
        c = c * BigUint::from(s - t + 1) / BigUint::from(t);
        row.push(c.clone());
    }
    row
}

fn binomial(n: usize, k: usize) -> BigUint {
    binomial_row(n).swap_remove(k)
}

/// `P(max |i m - j n| >= threshold)` over uniform splits of the pooled sample.
///
/// `blocks` lists the sizes of consecutive tie blocks in the pooled order and
/// must sum to `n + m`; `None` means no ties.
pub fn ks_exact_survival(
    threshold: u64,
    n: usize,
    m: usize,
    blocks: Option<&[usize]>,
) -> BigRational {
    if threshold == 0 {
        return BigRational::one();
    }
    let unit;
    let blocks = match blocks {
        Some(b) => {
            debug_assert_eq!(b.iter().sum::<usize>(), n + m);
            b
        }
        None => {
            unit = vec![1usize; n + m];
            &unit[..]
        }
    };
    let inside = |i: usize, j: usize| ((i * m) as u64).abs_diff((j * n) as u64) < threshold;

    let mut cur = vec![BigUint::zero(); n + 1];
    cur[0] = BigUint::one();
    let mut pos = 0usize;
    for &s in blocks {
        let weights = binomial_row(s);
        let mut next = vec![BigUint::zero(); n + 1];
        for (i, count) in cur.iter().enumerate() {
            if count.is_zero() || i > pos || pos - i > m {
                continue;
            }
            let j = pos - i;
            for (t, w) in weights.iter().enumerate() {
                let (ni, nj) = (i + t, j + s - t);
                if ni > n || nj > m {
                    continue;
                }
                if s == 1 {
                    next[ni] += count;
                } else {
                    next[ni] += count * w;
                }
            }
        }
        pos += s;
        for (i, count) in next.iter_mut().enumerate() {
            if !count.is_zero() && (pos < i || !inside(i, pos - i)) {
                *count = BigUint::zero();
            }
        }
        cur = next;
    }

    let total = binomial(n + m, n);
    let inside_paths = std::mem::take(&mut cur[n]);
    let frac = BigRational::new(inside_paths.into(), total.into());
    BigRational::one() - frac
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN).clamp(0.0, 1.0)
}

fn check_budget(n: usize, m: usize, budget: u64) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSize { n, m });
    }
    let product = n as u64 * m as u64;
    if product > budget {
        return Err(Error::BudgetExceeded { product, budget });
    }
    Ok(())
}

/// Exact p-value `P(D_{n,m} >= d)` for continuous data, with the default budget.
pub fn ks_pvalue_exact<F: Scalar>(d: F, n: usize, m: usize) -> Result<F> {
    ks_pvalue_exact_with_budget(d, n, m, DEFAULT_EXACT_BUDGET)
}

pub fn ks_pvalue_exact_with_budget<F: Scalar>(d: F, n: usize, m: usize, budget: u64) -> Result<F> {
    check_d(d)?;
    check_budget(n, m, budget)?;
    let grid = d.to_f64_lossy() * (n as f64) * (m as f64);
    let threshold = (grid - GRID_EPS).ceil().max(0.0) as u64;
    let p = ks_exact_survival(threshold, n, m, None);
    Ok(F::lit(ratio_to_f64(&p)))
}

/// Exact permutation p-value of the observed distance between `a` and `b`,
/// conditional on the tie pattern of the pooled sample.
pub fn ks_pvalue_exact_tied<F: Scalar>(a: &[F], b: &[F], budget: u64) -> Result<F> {
    let dist = ks_distance(a, b)?;
    check_budget(dist.n, dist.m, budget)?;
    let blocks: Vec<usize> = tie_blocks(a, b)
        .into_iter()
        .map(|(_, da, db)| da + db)
        .collect();
    let p = ks_exact_survival(dist.scaled, dist.n, dist.m, Some(&blocks));
    Ok(F::lit(ratio_to_f64(&p)))
}
