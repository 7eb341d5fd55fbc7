use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use pra_core::io::{fixture_config, load_fixture, parse_results, ConfigFile, ResultsFile};
use pra_core::{DatasetRegistry, PraConfig, ResultCorpus};

use crate::CliError;

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Use the embedded cross-dataset ReID corpus and its registry.
    #[arg(long)]
    pub fixture: bool,
    /// Long-form results CSV; may be repeated.
    #[arg(long = "results", value_name = "PATH")]
    pub results: Vec<PathBuf>,
    /// JSON configuration (dataset registry, metrics, alpha, ...).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

pub struct Loaded {
    pub corpus: ResultCorpus,
    pub registry: DatasetRegistry,
    pub config: ConfigFile,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_results(paths: &[PathBuf]) -> Result<ResultsFile, CliError> {
    let mut merged: Option<ResultsFile> = None;
    let mut messages = Vec::new();
    for path in paths {
        match parse_results(&read(path)?) {
            Ok(file) => {
                merged = Some(match merged.take() {
                    None => file,
                    Some(acc) => acc
                        .merge(file)
                        .map_err(|e| CliError::Input(format!("merging {}: {e}", path.display())))?,
                });
            }
            Err(e) => messages.push(format!("{}: {e}", path.display())),
        }
    }
    if !messages.is_empty() {
        return Err(CliError::Input(messages.join("\n")));
    }
    Ok(merged.unwrap_or_default())
}

impl InputArgs {
    pub fn load_config(&self) -> Result<Option<ConfigFile>, CliError> {
        match &self.config {
            Some(path) => ConfigFile::parse(&read(path)?)
                .map(Some)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
            None if self.fixture => Ok(Some(fixture_config())),
            None => Ok(None),
        }
    }

    /// Corpus, registry and config from `--fixture` and/or `--results` + `--config`.
    pub fn load(&self) -> Result<Loaded, CliError> {
        if !self.fixture && self.results.is_empty() {
            return Err(CliError::Input(
                "no input: pass --fixture or --results PATH (with --config)".into(),
            ));
        }
        let config = self.load_config()?.ok_or_else(|| {
            CliError::Input("--config is required unless --fixture is given".into())
        })?;
        let registry = config.registry().map_err(CliError::from)?;
        let corpus = if self.results.is_empty() {
            load_fixture().0
        } else {
            load_results(&self.results)?.to_corpus()
        };
        let corpus = if config.metrics.is_empty() || corpus.is_empty() {
            corpus
        } else {
            corpus.with_metric_order(&config.metrics)?
        };
        Ok(Loaded {
            corpus,
            registry,
            config,
        })
    }

    pub fn validate(&self) -> Result<Vec<String>, CliError> {
        let mut lines = Vec::new();
        let config = self.load_config()?;
        if let Some(cfg) = &config {
            lines.push(format!("config ok: {} dataset(s)", cfg.datasets.len()));
        }
        if !self.results.is_empty() {
            let file = load_results(&self.results)?;
            let corpus = file.to_corpus();
            lines.push(format!(
                "results ok: {} row(s), {} algorithm(s), {} metric(s), {} training dataset(s)",
                file.rows().len(),
                corpus.algorithms().len(),
                corpus.metrics().len(),
                corpus.training_datasets().len()
            ));
            if let Some(cfg) = &config {
                let registry = cfg.registry()?;
                for id in corpus.dataset_ids() {
                    if registry.get(id).is_none() {
                        return Err(CliError::Input(format!(
                            "dataset `{id}` is not in the config registry"
                        )));
                    }
                }
            }
        } else if self.fixture {
            let (corpus, _) = load_fixture();
            lines.push(format!(
                "fixture ok: {} algorithm(s), {} metric(s)",
                corpus.algorithms().len(),
                corpus.metrics().len()
            ));
        }
        if lines.is_empty() {
            return Err(CliError::Input("nothing to validate".into()));
        }
        Ok(lines)
    }
}

/// Applies command-line overrides on top of the config file values.
pub fn pra_config(
    config: &ConfigFile,
    alpha: Option<f64>,
    p_method: Option<&str>,
    round_taus: Option<u32>,
    seed: Option<u64>,
    trials: Option<usize>,
) -> Result<PraConfig<f64>, CliError> {
    let mut cfg = config.pra_config();
    if let Some(a) = alpha {
        cfg.alpha = a;
    }
    if let Some(m) = p_method {
        cfg.p_method = m.parse()?;
    }
    if round_taus.is_some() {
        cfg.tau_rounding = round_taus;
    }
    if let Some(s) = seed {
        cfg.mc_seed = s;
    }
    if let Some(t) = trials {
        cfg.mc_trials = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Whitespace- or comma-separated numbers; `#` starts a comment.
pub fn parse_sample(text: &str, origin: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::Input(format!("{origin}: bad sample value `{tok}`")))?;
            if !v.is_finite() {
                return Err(CliError::Input(format!(
                    "{origin}: non-finite value `{tok}`"
                )));
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{origin}: empty sample")));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_tokens() {
        let v = parse_sample("1, 2\n# skip 9\n3 4.5 # tail\n", "s").unwrap();
        assert_eq!(v, [1.0, 2.0, 3.0, 4.5]);
        assert!(parse_sample("# only\n", "s").is_err());
        assert!(parse_sample("1 NaN", "s").is_err());
        assert!(parse_sample("1 x", "s").is_err());
    }
}
