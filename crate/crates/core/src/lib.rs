//! Pairwise ranking analysis over cross-dataset benchmark tables.
//!
//! Given a table of algorithm scores per (training dataset, test dataset,
//! metric), the analysis computes Kendall tau-b between every admissible pair
//! of test datasets, splits the resulting correlations into a reference group
//! (pairs of reference datasets) and an inspecting group (one inspected
//! dataset paired with a reference), and runs a two-sample Kolmogorov-Smirnov
//! test to decide whether both groups follow the same distribution.
//!
//! The numerical core in [`stats`] is generic over the floating point type
//! through [`Scalar`]; exact p-values are computed with big rationals. The
//! aliases at the crate root fix the scalar to `f64`.

pub mod decimal;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod scalar;
pub mod stats;

pub use decimal::Decimal;
pub use error::{Error, Result, ValidationError, ValidationErrors};
pub use scalar::Scalar;

pub use pipeline::{
    DatasetDescriptor, DatasetRegistry, PMethod, PairKey, PraConfig, Realm, ResultCorpus, Role,
    ScoreVector, Verdict,
};
pub use stats::{Decision, PMethodUsed};

/// Tau record with `f64` correlation.
pub type TauRecord = stats::TauRecord<f64>;
/// Empirical CDF over `f64` samples.
pub type Ecdf = stats::Ecdf<f64>;
/// KS test outcome with `f64` fields.
pub type KsResult = stats::KsResult<f64>;
/// Reference/inspecting split with `f64` correlations.
pub type GroupedSamples = pipeline::GroupedSamples<f64>;
/// Full analysis report with `f64` numbers.
pub type PraReport = pipeline::PraReport<f64>;

/// Tool version echoed into report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
