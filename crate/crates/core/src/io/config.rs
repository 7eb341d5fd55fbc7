use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{DatasetDescriptor, DatasetRegistry, PraConfig, Role};
use crate::stats::{PMethod, DEFAULT_EXACT_BUDGET};

fn default_alpha() -> f64 {
    0.05
}

/// JSON analysis configuration. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub datasets: Vec<DatasetDescriptor>,
    /// Metric order for the report; empty means corpus order.
    #[serde(default)]
    pub metrics: Vec<String>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub p_method: PMethod,
    #[serde(default)]
    pub tau_rounding: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_budget: Option<u64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        let references = self
            .datasets
            .iter()
            .filter(|d| d.role == Role::Reference && !d.train_only)
            .count();
        if references < 2 {
            return Err(Error::Config(format!(
                "need at least 2 reference datasets with a test partition, found {references}"
            )));
        }
        DatasetRegistry::new(self.datasets.clone())?;
        Ok(())
    }

    pub fn registry(&self) -> Result<DatasetRegistry> {
        DatasetRegistry::new(self.datasets.clone())
    }

    pub fn pra_config(&self) -> PraConfig<f64> {
        let defaults = PraConfig::<f64>::default();
        PraConfig {
            alpha: self.alpha,
            p_method: self.p_method,
            tau_rounding: self.tau_rounding,
            mc_trials: self.mc_trials.unwrap_or(defaults.mc_trials),
            mc_seed: self.mc_seed.unwrap_or(defaults.mc_seed),
            exact_budget: self.exact_budget.unwrap_or(DEFAULT_EXACT_BUDGET),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "datasets": [
            {"id": "A", "realm": "real_world", "role_tag": "reference"},
            {"id": "B", "realm": "real_world", "role_tag": "reference"},
            {"id": "S", "realm": "synthetic", "role_tag": "inspecting"}
        ]
    }"#;

    #[test]
    fn defaults() {
        let cfg = ConfigFile::parse(MINIMAL).unwrap();
        assert_eq!(cfg.alpha, 0.05);
        assert_eq!(cfg.p_method, PMethod::Auto);
        assert_eq!(cfg.tau_rounding, None);
        assert_eq!(cfg.pra_config().exact_budget, 10_000);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_alpha() {
        let unknown = MINIMAL.replacen('{', r#"{"colour": "red","#, 1);
        assert!(matches!(ConfigFile::parse(&unknown), Err(Error::Json(_))));
        let bad_alpha = MINIMAL.replacen('{', r#"{"alpha": 1.5,"#, 1);
        assert!(matches!(
            ConfigFile::parse(&bad_alpha),
            Err(Error::InvalidAlpha(_))
        ));
    }

    #[test]
    fn needs_two_references() {
        let one_ref = MINIMAL.replacen(
            r#"{"id": "B", "realm": "real_world", "role_tag": "reference"}"#,
            r#"{"id": "B", "realm": "real_world", "train_only": true, "role_tag": "reference"}"#,
            1,
        );
        assert!(matches!(ConfigFile::parse(&one_ref), Err(Error::Config(_))));
    }

    #[test]
    fn json_round_trip() {
        let cfg = ConfigFile::parse(MINIMAL).unwrap();
        assert_eq!(ConfigFile::parse(&cfg.to_json()).unwrap(), cfg);
    }
}
