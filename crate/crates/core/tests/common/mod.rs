//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;

/// Counts straight from the definitions: every unordered pair is classified by
/// the sign of `(x_i - x_j)(y_i - y_j)`, tie totals come from value multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteCounts {
    pub concordant: u64,
    pub discordant: u64,
    pub n0: u64,
    pub n1: u64,
    pub n2: u64,
    pub tied_any: u64,
}

fn tie_pairs(v: &[i64]) -> u64 {
    let mut groups: BTreeMap<i64, u64> = BTreeMap::new();
    for x in v {
        *groups.entry(*x).or_default() += 1;
    }
    groups.values().map(|t| t * (t - 1) / 2).sum()
}

pub fn brute_counts(x: &[i64], y: &[i64]) -> BruteCounts {
    let n = x.len();
    let mut c = BruteCounts {
        concordant: 0,
        discordant: 0,
        n0: (n * (n.saturating_sub(1)) / 2) as u64,
        n1: tie_pairs(x),
        n2: tie_pairs(y),
        tied_any: 0,
    };
    for i in 0..n {
        for j in i + 1..n {
            let s = (x[i] - x[j]).signum() * (y[i] - y[j]).signum();
            match s {
                1 => c.concordant += 1,
                -1 => c.discordant += 1,
                _ => c.tied_any += 1,
            }
        }
    }
    c
}

/// `None` when either side is constant.
pub fn brute_tau(x: &[i64], y: &[i64]) -> Option<(BruteCounts, f64)> {
    let c = brute_counts(x, y);
    if c.n1 == c.n0 || c.n2 == c.n0 {
        return None;
    }
    let num = c.concordant as f64 - c.discordant as f64;
    let den = ((c.n0 - c.n1) as f64 * (c.n0 - c.n2) as f64).sqrt();
    Some((c, (num / den).clamp(-1.0, 1.0)))
}

/// Scaled KS distance `max_v |F_a(v) n m - F_b(v) n m|` evaluated at every pooled value.
pub fn brute_scaled_distance(a: &[f64], b: &[f64]) -> u64 {
    let (n, m) = (a.len() as i64, b.len() as i64);
    a.iter()
        .chain(b)
        .map(|&v| {
            let ca = a.iter().filter(|&&x| x <= v).count() as i64;
            let cb = b.iter().filter(|&&x| x <= v).count() as i64;
            (ca * m - cb * n).unsigned_abs()
        })
        .max()
        .unwrap_or(0)
}

/// Enumerates every way to split the pooled sample into groups of sizes
/// `|a|` and `|b|`; returns `(splits with distance >= observed, all splits)`.
pub fn exhaustive_ks(a: &[f64], b: &[f64]) -> (u64, u64) {
    let observed = brute_scaled_distance(a, b);
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let total = pooled.len();
    let n = a.len();
    let (mut hits, mut all) = (0u64, 0u64);
    for mask in 0u32..(1 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (i, v) in pooled.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(*v);
            } else {
                right.push(*v);
            }
        }
        all += 1;
        if brute_scaled_distance(&left, &right) >= observed {
            hits += 1;
        }
    }
    (hits, all)
}

/// Score vector of length `len` drawn from a small range so that ties occur
/// with probability roughly `tie_p` per element.
pub fn tied_vector<R: Rng>(rng: &mut R, len: usize, tie_p: f64) -> Vec<i64> {
    let mut v: Vec<i64> = Vec::with_capacity(len);
    for _ in 0..len {
        if !v.is_empty() && rng.gen_bool(tie_p) {
            let k = rng.gen_range(0..v.len());
            v.push(v[k]);
        } else {
            v.push(rng.gen_range(0..1_000));
        }
    }
    v
}

/// Sample of `len` values; ties are present when `levels` is small.
pub fn sample<R: Rng>(rng: &mut R, len: usize, levels: Option<u32>) -> Vec<f64> {
    (0..len)
        .map(|_| match levels {
            Some(l) => f64::from(rng.gen_range(0..l)) / 10.0,
            None => rng.gen::<f64>(),
        })
        .collect()
}
