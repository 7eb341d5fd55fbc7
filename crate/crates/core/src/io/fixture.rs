//! Embedded cross-dataset person re-identification results: ten algorithms,
//! Rank-1 and mAP, five training datasets.

use crate::pipeline::{DatasetRegistry, ResultCorpus};

use super::config::ConfigFile;
use super::results::parse_results;

pub const FIXTURE_RESULTS_CSV: &str = include_str!("../../data/reid_cross_dataset.csv");
pub const FIXTURE_CONFIG_JSON: &str = include_str!("../../data/reid_config.json");

pub fn fixture_config() -> ConfigFile {
    ConfigFile::parse(FIXTURE_CONFIG_JSON).expect("embedded config is valid")
}

/// The embedded corpus (metrics ordered as in the config) and its registry.
pub fn load_fixture() -> (ResultCorpus, DatasetRegistry) {
    let config = fixture_config();
    let corpus = parse_results(FIXTURE_RESULTS_CSV)
        .expect("embedded results are valid")
        .to_corpus()
        .with_metric_order(&config.metrics)
        .expect("config metrics exist in the corpus");
    let registry = config.registry().expect("embedded registry is valid");
    (corpus, registry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let (corpus, registry) = load_fixture();
        assert_eq!(corpus.algorithms().len(), 10);
        assert_eq!(corpus.metrics(), ["R1", "mAP"]);
        assert_eq!(corpus.training_datasets().len(), 5);
        assert_eq!(registry.datasets().len(), 6);
        assert_eq!(FIXTURE_RESULTS_CSV.lines().count(), 341);
    }

    #[test]
    fn spot_values() {
        let (corpus, _) = load_fixture();
        let v =
            |train, test, metric, alg| corpus.lookup(train, test, metric, alg).unwrap().to_string();
        assert_eq!(v("MSMT17", "ClonedPerson", "R1", "TransMatcher"), "51.8");
        assert_eq!(v("UnrealPerson", "CUHK03", "mAP", "MGN"), "12.0");
        assert_eq!(v("CUHK03", "MSMT17", "R1", "PCB"), "6.1");
        assert_eq!(
            v("RandPerson", "ClonedPerson", "mAP", "TransMatcher"),
            "22.1"
        );
    }
}
