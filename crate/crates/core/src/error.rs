use std::fmt;

use thiserror::Error;

use crate::pipeline::PairKey;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("vector too short: {0} entries, need at least 2")]
    TooShort(usize),
    #[error("degenerate vector: all entries of {0} are equal")]
    DegenerateVector(&'static str),
    #[error("non-finite or incomparable value in input")]
    NonFinite,
    #[error("empty sample")]
    EmptySample,
    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("sample sizes must be positive (n = {n}, m = {m})")]
    InvalidSize { n: usize, m: usize },
    #[error("KS distance must lie in [0, 1], got {0}")]
    InvalidD(f64),
    #[error("exact KS budget exceeded: n*m = {product} > {budget}")]
    BudgetExceeded { product: u64, budget: u64 },
    #[error("Monte Carlo needs at least {min} trials, got {got}")]
    TooFewTrials { got: usize, min: usize },
    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("{pair}: {source}")]
    Pair {
        pair: PairKey,
        #[source]
        source: Box<Error>,
    },
    #[error("empty {group} group for metric `{metric}`")]
    EmptyGroup { metric: String, group: &'static str },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid registry: {0}")]
    Registry(String),
    #[error("{0}")]
    Validation(ValidationErrors),
    #[error("bad sample value `{0}`")]
    BadSample(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One problem found while validating a results file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("line {line}: duplicate key ({train}, {test}, {metric}, {algorithm})")]
    DuplicateKey {
        line: usize,
        train: String,
        test: String,
        metric: String,
        algorithm: String,
    },
    #[error("ragged matrix in block ({train}, {test}, {metric}): {detail}")]
    RaggedMatrix {
        train: String,
        test: String,
        metric: String,
        detail: String,
    },
    #[error("line {line}: bad number `{text}`: {reason}")]
    BadNumber {
        line: usize,
        text: String,
        reason: String,
    },
}

/// Every violation found in one validation pass.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} validation error(s)", self.0.len())?;
        for e in &self.0 {
            write!(f, "\n  - {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

impl Error {
    pub(crate) fn for_pair(pair: &PairKey, source: Error) -> Self {
        Error::Pair {
            pair: pair.clone(),
            source: Box::new(source),
        }
    }
}
