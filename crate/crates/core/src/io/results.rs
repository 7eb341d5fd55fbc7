use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::decimal::Decimal;
use crate::error::{ValidationError, ValidationErrors};
use crate::pipeline::{ResultCorpus, ScoreVector};

/// Per test dataset, one optional score per algorithm.
type PartialTable = BTreeMap<String, Vec<Option<Decimal>>>;

pub const RESULTS_HEADER: [&str; 5] = [
    "train_dataset",
    "test_dataset",
    "metric",
    "algorithm",
    "value",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsRow {
    pub train_dataset: String,
    pub test_dataset: String,
    pub metric: String,
    pub algorithm: String,
    pub value: Decimal,
}

/// Validated long-form results: one score per (train, test, metric, algorithm).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResultsFile {
    rows: Vec<ResultsRow>,
}

/// Parses and validates a results CSV, collecting every violation.
pub fn parse_results(text: &str) -> Result<ResultsFile, ValidationErrors> {
    let mut errors = Vec::new();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut records = reader.records();
    match records.next() {
        None => {
            return Err(ValidationErrors(vec![ValidationError::Schema(
                "missing header row".into(),
            )]))
        }
        Some(Err(e)) => {
            return Err(ValidationErrors(vec![ValidationError::Schema(
                e.to_string(),
            )]))
        }
        Some(Ok(header)) => {
            let got: Vec<&str> = header.iter().collect();
            if got != RESULTS_HEADER {
                let missing: Vec<_> = RESULTS_HEADER.iter().filter(|c| !got.contains(c)).collect();
                let extra: Vec<_> = got.iter().filter(|c| !RESULTS_HEADER.contains(c)).collect();
                return Err(ValidationErrors(vec![ValidationError::Schema(format!(
                    "header must be `{}`; missing {:?}, unexpected {:?}",
                    RESULTS_HEADER.join(","),
                    missing,
                    extra
                ))]));
            }
        }
    }

    let mut rows = Vec::new();
    let mut seen: HashMap<(String, String, String, String), usize> = HashMap::new();
    for record in records {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                errors.push(ValidationError::Schema(e.to_string()));
                continue;
            }
        };
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != RESULTS_HEADER.len() {
            errors.push(ValidationError::Schema(format!(
                "line {line}: expected {} fields, found {}",
                RESULTS_HEADER.len(),
                record.len()
            )));
            continue;
        }
        let field = |i: usize| record[i].to_string();
        if let Some(i) = (0..4).find(|&i| record[i].is_empty()) {
            errors.push(ValidationError::Schema(format!(
                "line {line}: empty `{}`",
                RESULTS_HEADER[i]
            )));
            continue;
        }
        let value = match record[4].parse::<Decimal>() {
            Ok(v) => v,
            Err(e) => {
                errors.push(ValidationError::BadNumber {
                    line,
                    text: field(4),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let key = (field(0), field(1), field(2), field(3));
        if seen.insert(key.clone(), line).is_some() {
            errors.push(ValidationError::DuplicateKey {
                line,
                train: key.0,
                test: key.1,
                metric: key.2,
                algorithm: key.3,
            });
            continue;
        }
        rows.push(ResultsRow {
            train_dataset: key.0,
            test_dataset: key.1,
            metric: key.2,
            algorithm: key.3,
            value,
        });
    }

    let file = ResultsFile { rows };
    errors.extend(file.matrix_violations());
    if errors.is_empty() {
        Ok(file)
    } else {
        Err(ValidationErrors(errors))
    }
}

fn first_seen<'a>(items: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for s in items {
        if !out.iter().any(|o| o == s) {
            out.push(s.to_string());
        }
    }
    out
}

impl ResultsFile {
    pub fn rows(&self) -> &[ResultsRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn metrics(&self) -> Vec<String> {
        first_seen(self.rows.iter().map(|r| r.metric.as_str()))
    }

    pub fn algorithms(&self) -> Vec<String> {
        first_seen(self.rows.iter().map(|r| r.algorithm.as_str()))
    }

    /// Appends rows of another file; the result is validated again.
    pub fn merge(mut self, other: ResultsFile) -> Result<Self, ValidationErrors> {
        self.rows.extend(other.rows);
        parse_results(&self.to_csv())
    }

    fn matrix_violations(&self) -> Vec<ValidationError> {
        let algorithms: BTreeSet<&str> = self.rows.iter().map(|r| r.algorithm.as_str()).collect();
        let metrics: BTreeSet<&str> = self.rows.iter().map(|r| r.metric.as_str()).collect();
        let mut blocks: BTreeMap<(&str, &str, &str), BTreeSet<&str>> = BTreeMap::new();
        for r in &self.rows {
            blocks
                .entry((&r.train_dataset, &r.test_dataset, &r.metric))
                .or_default()
                .insert(&r.algorithm);
        }

        let mut out = Vec::new();
        for ((train, test, metric), algs) in &blocks {
            let missing: Vec<&str> = algorithms.difference(algs).copied().collect();
            if !missing.is_empty() {
                out.push(ValidationError::RaggedMatrix {
                    train: train.to_string(),
                    test: test.to_string(),
                    metric: metric.to_string(),
                    detail: format!("missing algorithm(s) {}", missing.join(", ")),
                });
            }
        }
        let cells: BTreeSet<(&str, &str)> = blocks.keys().map(|(t, s, _)| (*t, *s)).collect();
        for (train, test) in cells {
            for metric in &metrics {
                if !blocks.contains_key(&(train, test, metric)) {
                    out.push(ValidationError::RaggedMatrix {
                        train: train.to_string(),
                        test: test.to_string(),
                        metric: metric.to_string(),
                        detail: "block missing for this metric".into(),
                    });
                }
            }
        }
        out
    }

    /// Canonical serialization: header, then rows in stored order, LF endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(RESULTS_HEADER).expect("write to memory");
        for r in &self.rows {
            w.write_record([
                r.train_dataset.as_str(),
                &r.test_dataset,
                &r.metric,
                &r.algorithm,
                &r.value.to_string(),
            ])
            .expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
    }

    /// Corpus with metrics and algorithms in order of first appearance.
    pub fn to_corpus(&self) -> ResultCorpus {
        let metrics = self.metrics();
        let algorithms = self.algorithms();
        let index: HashMap<&str, usize> = algorithms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_str(), i))
            .collect();
        let mut cells: BTreeMap<(String, String), PartialTable> = BTreeMap::new();
        for r in &self.rows {
            let slot = cells
                .entry((r.train_dataset.clone(), r.metric.clone()))
                .or_default()
                .entry(r.test_dataset.clone())
                .or_insert_with(|| vec![None; algorithms.len()]);
            slot[index[r.algorithm.as_str()]] = Some(r.value);
        }
        let tables = cells
            .into_iter()
            .map(|(k, t)| {
                let t = t
                    .into_iter()
                    .map(|(test, v)| {
                        let scores: ScoreVector = v
                            .into_iter()
                            .map(|s| s.expect("validated results form a complete matrix"))
                            .collect();
                        (test, scores)
                    })
                    .collect();
                (k, t)
            })
            .collect();
        ResultCorpus::new(metrics, algorithms, tables).expect("validated results form a corpus")
    }

    /// Rows of a corpus: by training dataset, metric, test dataset, then algorithm order.
    pub fn from_corpus(corpus: &ResultCorpus) -> Self {
        let mut rows = Vec::new();
        for (train, metric, table) in corpus.tables() {
            for (test, scores) in table {
                for (alg, value) in corpus.algorithms().iter().zip(scores.iter()) {
                    rows.push(ResultsRow {
                        train_dataset: train.to_string(),
                        test_dataset: test.clone(),
                        metric: metric.to_string(),
                        algorithm: alg.clone(),
                        value: *value,
                    });
                }
            }
        }
        Self { rows }
    }
}
