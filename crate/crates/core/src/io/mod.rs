//! File formats: long-form results CSV, JSON config, the embedded reference
//! corpus, and report / plot-data emitters.

mod config;
mod emit;
mod fixture;
mod results;

pub use config::ConfigFile;
pub use emit::{
    canonical_json, emit_plot_data, emit_report, emit_tau_table, format_number, parse_report_json,
    ReportFormat, TauTable,
};
pub use fixture::{fixture_config, load_fixture, FIXTURE_CONFIG_JSON, FIXTURE_RESULTS_CSV};
pub use results::{parse_results, ResultsFile, ResultsRow, RESULTS_HEADER};
