use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::{kendall_counts, kendall_tau_b, TauRecord};

use super::corpus::ResultCorpus;
use super::groups::GroupTag;
use super::registry::DatasetRegistry;

/// Unordered pair of test datasets under one training dataset and metric.
/// `test_a < test_b` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairKey {
    pub train: String,
    pub test_a: String,
    pub test_b: String,
    pub metric: String,
}

impl PairKey {
    pub fn new(
        train: impl Into<String>,
        test_x: impl Into<String>,
        test_y: impl Into<String>,
        metric: impl Into<String>,
    ) -> Self {
        let (x, y) = (test_x.into(), test_y.into());
        let (test_a, test_b) = if x <= y { (x, y) } else { (y, x) };
        Self {
            train: train.into(),
            test_a,
            test_b,
            metric: metric.into(),
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.test_a == id || self.test_b == id
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "train={} ({}, {}) {}",
            self.train, self.test_a, self.test_b, self.metric
        )
    }
}

/// One row of the tau table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauEntry<F> {
    pub pair: PairKey,
    pub group: GroupTag,
    pub record: TauRecord<F>,
}

pub(crate) fn canonical_order<'a>(
    registry: &'a DatasetRegistry,
    metrics: &'a [String],
) -> impl Fn(&PairKey) -> (usize, usize, String, String) + 'a {
    move |k: &PairKey| {
        (
            metrics
                .iter()
                .position(|m| *m == k.metric)
                .unwrap_or(usize::MAX),
            registry.position(&k.train).unwrap_or(usize::MAX),
            k.test_a.clone(),
            k.test_b.clone(),
        )
    }
}

/// Every admissible test-dataset pair of every (train, metric) table, in
/// canonical order: metric (corpus order), training dataset (registry order),
/// then the pair lexicographically.
pub fn enumerate_pairs(corpus: &ResultCorpus, registry: &DatasetRegistry) -> Result<Vec<PairKey>> {
    for id in corpus.dataset_ids() {
        registry.require(id)?;
    }
    let mut pairs = Vec::new();
    for (train, metric, table) in corpus.tables() {
        let admissible: Vec<&str> = table
            .keys()
            .map(String::as_str)
            .filter(|&test| test != train && !registry.get(test).is_some_and(|d| d.train_only))
            .collect();
        for (i, a) in admissible.iter().enumerate() {
            for b in &admissible[i + 1..] {
                pairs.push(PairKey::new(train, *a, *b, metric));
            }
        }
    }
    let key = canonical_order(registry, corpus.metrics());
    pairs.sort_by_cached_key(|p| key(p));
    Ok(pairs)
}

/// Kendall tau-b for every pair, in the order given. Pairs are evaluated in
/// parallel; the output order does not depend on scheduling.
pub fn compute_taus<F: Scalar>(
    corpus: &ResultCorpus,
    pairs: &[PairKey],
) -> Result<Vec<(PairKey, TauRecord<F>)>> {
    let results: Vec<Result<TauRecord<F>>> = pairs
        .par_iter()
        .map(|p| {
            let x = corpus.scores(&p.train, &p.test_a, &p.metric)?;
            let y = corpus.scores(&p.train, &p.test_b, &p.metric)?;
            kendall_tau_b(x, y).map_err(|e| Error::for_pair(p, e))
        })
        .collect();
    pairs
        .iter()
        .cloned()
        .zip(results)
        .map(|(p, r)| r.map(|rec| (p, rec)))
        .collect()
}

/// Number of algorithm pairs whose order flips between the two test datasets,
/// i.e. line crossings between the two columns of a per-algorithm score plot.
pub fn crossing_count(
    corpus: &ResultCorpus,
    train: &str,
    test_a: &str,
    test_b: &str,
    metric: &str,
) -> Result<u64> {
    let key = PairKey::new(train, test_a, test_b, metric);
    let x = corpus.scores(train, test_a, metric)?;
    let y = corpus.scores(train, test_b, metric)?;
    let counts = kendall_counts(x, y).map_err(|e| Error::for_pair(&key, e))?;
    if counts.n1 == counts.n0 || counts.n2 == counts.n0 {
        let which = if counts.n1 == counts.n0 { "x" } else { "y" };
        return Err(Error::for_pair(&key, Error::DegenerateVector(which)));
    }
    Ok(counts.n_discordant)
}
