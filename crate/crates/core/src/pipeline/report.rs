use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{round_to, Scalar};
use crate::stats::{
    ks_test, summarize, Decision, KsOptions, KsResult, PMethod, Summary, DEFAULT_EXACT_BUDGET,
};

use super::corpus::ResultCorpus;
use super::groups::{group_taus, GroupTag, GroupedSamples};
use super::pairs::{compute_taus, enumerate_pairs, PairKey, TauEntry};
use super::registry::{DatasetDescriptor, DatasetRegistry};

#[derive(Debug, Clone, PartialEq)]
pub struct PraConfig<F> {
    pub alpha: F,
    pub p_method: PMethod,
    /// Round tau to this many decimals before grouping.
    pub tau_rounding: Option<u32>,
    pub mc_trials: usize,
    pub mc_seed: u64,
    pub exact_budget: u64,
}

impl<F: Scalar> Default for PraConfig<F> {
    fn default() -> Self {
        Self {
            alpha: F::lit(0.05),
            p_method: PMethod::Auto,
            tau_rounding: None,
            mc_trials: 100_000,
            mc_seed: 0x5eed,
            exact_budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

impl<F: Scalar> PraConfig<F> {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > F::zero() && self.alpha < F::one()) {
            return Err(Error::InvalidAlpha(self.alpha.to_f64_lossy()));
        }
        Ok(())
    }

    fn ks_options(&self) -> KsOptions<F> {
        KsOptions {
            alpha: self.alpha,
            method: self.p_method,
            exact_budget: self.exact_budget,
            mc_trials: self.mc_trials,
            mc_seed: self.mc_seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Identical,
    Different,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummaries<F> {
    pub metric: String,
    pub reference: Summary<F>,
    pub inspecting: Summary<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricKs<F> {
    pub metric: String,
    pub result: KsResult<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricVerdict {
    pub metric: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub pair: PairKey,
    pub crossings: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub crossings: Vec<Crossing>,
    /// Metrics where the critical-distance rule and the p-value rule disagree.
    pub rule_disagreements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance<F> {
    pub tool: String,
    pub version: String,
    pub alpha: F,
    pub p_method: PMethod,
    pub tau_rounding: Option<u32>,
    pub mc_trials: usize,
    pub mc_seed: u64,
    pub exact_budget: u64,
    pub metrics: Vec<String>,
    pub algorithms: Vec<String>,
    pub datasets: Vec<DatasetDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PraReport<F> {
    pub tau_table: Vec<TauEntry<F>>,
    pub groups: Vec<GroupedSamples<F>>,
    pub summaries: Vec<GroupSummaries<F>>,
    pub ks: Vec<MetricKs<F>>,
    pub verdicts: Vec<MetricVerdict>,
    pub diagnostics: Diagnostics,
    pub provenance: Provenance<F>,
}

impl<F> PraReport<F> {
    pub fn all_identical(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| v.verdict == Verdict::Identical)
    }

    pub fn ks_for(&self, metric: &str) -> Option<&KsResult<F>> {
        self.ks
            .iter()
            .find(|k| k.metric == metric)
            .map(|k| &k.result)
    }

    pub fn summary_for(&self, metric: &str) -> Option<&GroupSummaries<F>> {
        self.summaries.iter().find(|s| s.metric == metric)
    }

    pub fn group_for(&self, metric: &str) -> Option<&GroupedSamples<F>> {
        self.groups.iter().find(|g| g.metric == metric)
    }
}

/// Tau table for every admissible pair, tagged with its group.
pub fn tau_table<F: Scalar>(
    corpus: &ResultCorpus,
    registry: &DatasetRegistry,
) -> Result<Vec<TauEntry<F>>> {
    let pairs = enumerate_pairs(corpus, registry)?;
    compute_taus(corpus, &pairs)?
        .into_iter()
        .map(|(pair, record)| {
            Ok(TauEntry {
                group: GroupTag::classify(&pair, registry)?,
                pair,
                record,
            })
        })
        .collect()
}

/// Runs the full analysis: pairs, taus, groups, summaries and one KS test per metric.
pub fn run_pra<F: Scalar>(
    corpus: &ResultCorpus,
    registry: &DatasetRegistry,
    config: &PraConfig<F>,
) -> Result<PraReport<F>> {
    config.validate()?;
    let metrics = corpus.metrics().to_vec();
    let tau_table = tau_table::<F>(corpus, registry)?;

    let grouped_input: Vec<(PairKey, F)> = tau_table
        .iter()
        .map(|e| {
            let tau = match config.tau_rounding {
                Some(digits) => round_to(e.record.tau, digits),
                None => e.record.tau,
            };
            (e.pair.clone(), tau)
        })
        .collect();
    let groups = group_taus(&grouped_input, registry, &metrics)?;

    let options = config.ks_options();
    let mut summaries = Vec::with_capacity(groups.len());
    let mut ks = Vec::with_capacity(groups.len());
    let mut verdicts = Vec::with_capacity(groups.len());
    let mut rule_disagreements = Vec::new();
    for g in &groups {
        let reference = g.reference_values();
        let inspecting = g.inspecting_values();
        summaries.push(GroupSummaries {
            metric: g.metric.clone(),
            reference: summarize(&reference)?,
            inspecting: summarize(&inspecting)?,
        });
        let result = ks_test(&reference, &inspecting, &options)?;
        if !result.rules_agree {
            rule_disagreements.push(g.metric.clone());
        }
        verdicts.push(MetricVerdict {
            metric: g.metric.clone(),
            verdict: match result.decision {
                Decision::AcceptNull => Verdict::Identical,
                Decision::RejectNull => Verdict::Different,
            },
        });
        ks.push(MetricKs {
            metric: g.metric.clone(),
            result,
        });
    }

    let crossings = tau_table
        .iter()
        .map(|e| Crossing {
            pair: e.pair.clone(),
            crossings: e.record.counts.n_discordant,
        })
        .collect();

    Ok(PraReport {
        tau_table,
        groups,
        summaries,
        ks,
        verdicts,
        diagnostics: Diagnostics {
            crossings,
            rule_disagreements,
        },
        provenance: Provenance {
            tool: "pra".to_string(),
            version: crate::VERSION.to_string(),
            alpha: config.alpha,
            p_method: config.p_method,
            tau_rounding: config.tau_rounding,
            mc_trials: config.mc_trials,
            mc_seed: config.mc_seed,
            exact_budget: config.exact_budget,
            metrics,
            algorithms: corpus.algorithms().to_vec(),
            datasets: registry.datasets().to_vec(),
        },
    })
}
