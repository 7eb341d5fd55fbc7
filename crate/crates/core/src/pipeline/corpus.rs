use std::collections::BTreeMap;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::decimal::Decimal;
use crate::error::{Error, Result};

/// Scores of every algorithm on one (train, test, metric) cell, in corpus
/// algorithm order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreVector(Vec<Decimal>);

impl ScoreVector {
    pub fn new(values: Vec<Decimal>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<Decimal> {
        self.0
    }
}

impl Deref for ScoreVector {
    type Target = [Decimal];

    fn deref(&self) -> &[Decimal] {
        &self.0
    }
}

impl FromIterator<Decimal> for ScoreVector {
    fn from_iter<I: IntoIterator<Item = Decimal>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Complete score matrices keyed by (training dataset, metric).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResultCorpus {
    metrics: Vec<String>,
    algorithms: Vec<String>,
    tables: BTreeMap<(String, String), BTreeMap<String, ScoreVector>>,
}

impl ResultCorpus {
    /// Builds a corpus; every score vector must have one entry per algorithm.
    pub fn new(
        metrics: Vec<String>,
        algorithms: Vec<String>,
        tables: BTreeMap<(String, String), BTreeMap<String, ScoreVector>>,
    ) -> Result<Self> {
        for ((train, metric), table) in &tables {
            if !metrics.contains(metric) {
                return Err(Error::UnknownMetric(metric.clone()));
            }
            for (test, scores) in table {
                if scores.len() != algorithms.len() {
                    return Err(Error::Config(format!(
                        "scores for ({train}, {test}, {metric}) have {} entries, expected {}",
                        scores.len(),
                        algorithms.len()
                    )));
                }
            }
        }
        Ok(Self {
            metrics,
            algorithms,
            tables,
        })
    }

    pub fn metrics(&self) -> &[String] {
        &self.metrics
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Distinct training datasets, lexicographic.
    pub fn training_datasets(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.tables.keys().map(|(t, _)| t.as_str()).collect();
        v.dedup();
        v
    }

    /// Every dataset id mentioned as train or test.
    pub fn dataset_ids(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .tables
            .iter()
            .flat_map(|((train, _), t)| {
                std::iter::once(train.as_str()).chain(t.keys().map(String::as_str))
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn table(&self, train: &str, metric: &str) -> Option<&BTreeMap<String, ScoreVector>> {
        self.tables.get(&(train.to_string(), metric.to_string()))
    }

    pub fn tables(&self) -> impl Iterator<Item = (&str, &str, &BTreeMap<String, ScoreVector>)> {
        self.tables
            .iter()
            .map(|((train, metric), t)| (train.as_str(), metric.as_str(), t))
    }

    pub fn scores(&self, train: &str, test: &str, metric: &str) -> Result<&ScoreVector> {
        if !self.metrics.iter().any(|m| m == metric) {
            return Err(Error::UnknownMetric(metric.to_string()));
        }
        self.table(train, metric)
            .ok_or_else(|| Error::UnknownDataset(train.to_string()))?
            .get(test)
            .ok_or_else(|| Error::UnknownDataset(test.to_string()))
    }

    pub fn lookup(
        &self,
        train: &str,
        test: &str,
        metric: &str,
        algorithm: &str,
    ) -> Option<Decimal> {
        let idx = self.algorithms.iter().position(|a| a == algorithm)?;
        self.scores(train, test, metric).ok().map(|s| s[idx])
    }

    /// Restricts and reorders metrics to `order`.
    pub fn with_metric_order(mut self, order: &[String]) -> Result<Self> {
        if let Some(missing) = order.iter().find(|m| !self.metrics.contains(m)) {
            return Err(Error::UnknownMetric(missing.clone()));
        }
        self.tables.retain(|(_, metric), _| order.contains(metric));
        self.metrics = order.to_vec();
        Ok(self)
    }
}
