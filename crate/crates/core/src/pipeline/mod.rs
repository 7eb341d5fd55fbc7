//! Pair enumeration, tau computation, grouping and the end-to-end analysis.

mod corpus;
mod groups;
mod pairs;
mod registry;
mod report;

pub use crate::stats::PMethod;
pub use corpus::{ResultCorpus, ScoreVector};
pub use groups::{group_taus, GroupEntry, GroupTag, GroupedSamples};
pub use pairs::{compute_taus, crossing_count, enumerate_pairs, PairKey, TauEntry};
pub use registry::{DatasetDescriptor, DatasetRegistry, Realm, Role};
pub use report::{
    run_pra, tau_table, Crossing, Diagnostics, GroupSummaries, MetricKs, MetricVerdict, PraConfig,
    PraReport, Provenance, Verdict,
};
