use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::pairs::PairKey;
use super::registry::{DatasetRegistry, Role};

/// Group a tau value lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupTag {
    Reference,
    Inspecting,
    Excluded,
}

impl GroupTag {
    pub fn classify(pair: &PairKey, registry: &DatasetRegistry) -> Result<Self> {
        let a = registry.require(&pair.test_a)?.role;
        let b = registry.require(&pair.test_b)?.role;
        Ok(match (a, b) {
            (Role::Reference, Role::Reference) => GroupTag::Reference,
            (Role::Reference, Role::Inspecting) | (Role::Inspecting, Role::Reference) => {
                GroupTag::Inspecting
            }
            _ => GroupTag::Excluded,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupEntry<F> {
    pub pair: PairKey,
    pub tau: F,
}

/// Reference and inspecting tau samples of one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupedSamples<F> {
    pub metric: String,
    pub reference: Vec<GroupEntry<F>>,
    pub inspecting: Vec<GroupEntry<F>>,
    pub n: usize,
    pub m: usize,
}

impl<F: Scalar> GroupedSamples<F> {
    pub fn reference_values(&self) -> Vec<F> {
        self.reference.iter().map(|e| e.tau).collect()
    }

    pub fn inspecting_values(&self) -> Vec<F> {
        self.inspecting.iter().map(|e| e.tau).collect()
    }
}

/// Splits tau values per metric into the reference group (both test datasets
/// are references) and the inspecting group (one inspected dataset against a
/// reference). Everything else is dropped.
pub fn group_taus<F: Scalar>(
    taus: &[(PairKey, F)],
    registry: &DatasetRegistry,
    metrics: &[String],
) -> Result<Vec<GroupedSamples<F>>> {
    let mut out = Vec::with_capacity(metrics.len());
    for metric in metrics {
        let mut reference = Vec::new();
        let mut inspecting = Vec::new();
        for (pair, tau) in taus.iter().filter(|(p, _)| &p.metric == metric) {
            let entry = GroupEntry {
                pair: pair.clone(),
                tau: *tau,
            };
            match GroupTag::classify(pair, registry)? {
                GroupTag::Reference => reference.push(entry),
                GroupTag::Inspecting => inspecting.push(entry),
                GroupTag::Excluded => {}
            }
        }
        for (group, entries) in [("reference", &reference), ("inspecting", &inspecting)] {
            if entries.is_empty() {
                return Err(Error::EmptyGroup {
                    metric: metric.clone(),
                    group,
                });
            }
        }
        out.push(GroupedSamples {
            metric: metric.clone(),
            n: reference.len(),
            m: inspecting.len(),
            reference,
            inspecting,
        });
    }
    Ok(out)
}
