//! `pra`: pairwise ranking analysis from the command line.
//!
//! Exit codes: 0 success (or gate pass), 1 gate failure, 2 input error.

mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pra_core::io::{
    canonical_json, emit_plot_data, emit_report, emit_tau_table, fixture_config, format_number,
    ReportFormat, TauTable, FIXTURE_CONFIG_JSON, FIXTURE_RESULTS_CSV,
};
use pra_core::pipeline::{run_pra, tau_table};
use pra_core::stats::{
    ks_pvalue_exact_tied, ks_pvalue_montecarlo, ks_test, KsOptions, MIN_MC_TRIALS,
};
use pra_core::PraConfig;

use input::{parse_sample, pra_config, read, InputArgs};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug)]
pub enum CliError {
    Input(String),
}

impl From<pra_core::Error> for CliError {
    fn from(e: pra_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pra",
    version,
    about = "Pairwise ranking analysis of benchmark result tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    /// Output format: text, json or csv.
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct TestArgs {
    /// Significance level.
    #[arg(long)]
    alpha: Option<f64>,
    /// p-value routine: exact, asymptotic, montecarlo or auto.
    #[arg(long = "p-method")]
    p_method: Option<String>,
    /// Monte Carlo seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo trials.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full analysis: tau table, groups, KS test and verdict per metric.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        test: TestArgs,
        /// Round tau to this many decimals before grouping.
        #[arg(long = "round-taus", value_name = "DIGITS")]
        round_taus: Option<u32>,
        /// Exit 1 unless every metric's verdict is `identical`.
        #[arg(long)]
        gate: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kendall tau-b for every admissible test pair.
    Tau {
        #[command(flatten)]
        input: InputArgs,
        /// Restrict to one metric.
        #[arg(long)]
        metric: Option<String>,
        #[arg(long = "round-taus", value_name = "DIGITS")]
        round_taus: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-sample KS test between two sample files (reference first).
    Ks {
        reference: Option<PathBuf>,
        inspecting: Option<PathBuf>,
        /// Use the embedded corpus's tau groups for --metric instead of files.
        #[arg(long)]
        fixture: bool,
        #[arg(long)]
        metric: Option<String>,
        #[command(flatten)]
        test: TestArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-algorithm score series of one training dataset, for plotting.
    PlotData {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        train: String,
        #[arg(long)]
        metric: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Validate results and config files.
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Monte Carlo permutation p-value with a 3-sigma interval.
    McOracle {
        reference: Option<PathBuf>,
        inspecting: Option<PathBuf>,
        #[arg(long)]
        fixture: bool,
        #[arg(long)]
        metric: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the embedded results corpus (or its config with --config-json).
    Fixture {
        #[arg(long = "config-json")]
        config_json: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Success,
    GateFail,
}

fn write_output(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}

fn parse_format(s: &str) -> Result<ReportFormat, CliError> {
    Ok(s.parse()?)
}

/// Reference and inspecting samples, from two files or from the embedded corpus.
fn two_samples(
    reference: Option<&PathBuf>,
    inspecting: Option<&PathBuf>,
    fixture: bool,
    metric: Option<&str>,
) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    if fixture {
        let metric = metric.ok_or_else(|| CliError::Input("--fixture needs --metric".into()))?;
        let (corpus, registry) = pra_core::io::load_fixture();
        let report = run_pra(&corpus, &registry, &PraConfig::<f64>::default())?;
        let g = report
            .group_for(metric)
            .ok_or_else(|| CliError::Input(format!("unknown metric `{metric}`")))?;
        return Ok((g.reference_values(), g.inspecting_values()));
    }
    match (reference, inspecting) {
        (Some(a), Some(b)) => Ok((
            parse_sample(&read(a)?, &a.display().to_string())?,
            parse_sample(&read(b)?, &b.display().to_string())?,
        )),
        _ => Err(CliError::Input(
            "two sample files (reference, inspecting) or --fixture --metric are required".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze {
            input,
            test,
            round_taus,
            gate,
            output,
        } => {
            let format = parse_format(&output.format)?;
            let loaded = input.load()?;
            let cfg = pra_config(
                &loaded.config,
                test.alpha,
                test.p_method.as_deref(),
                round_taus,
                test.seed,
                test.trials,
            )?;
            let report = run_pra(&loaded.corpus, &loaded.registry, &cfg)?;
            write_output(&emit_report(&report, format), output.out.as_ref())?;
            if gate && !report.all_identical() {
                eprintln!("gate: at least one metric's verdict is `different`");
                return Ok(Outcome::GateFail);
            }
            Ok(Outcome::Success)
        }
        Command::Tau {
            input,
            metric,
            round_taus,
            output,
        } => {
            let format = parse_format(&output.format)?;
            let loaded = input.load()?;
            let entries = if loaded.corpus.is_empty() {
                Vec::new()
            } else {
                tau_table::<f64>(&loaded.corpus, &loaded.registry)?
            };
            let mut table = TauTable {
                datasets: loaded.registry.datasets().to_vec(),
                metrics: loaded.corpus.metrics().to_vec(),
                tau_rounding: round_taus,
                entries,
            };
            if let Some(m) = metric {
                table = table.only_metric(&m)?;
            }
            write_output(&emit_tau_table(&table, format), output.out.as_ref())?;
            Ok(Outcome::Success)
        }
        Command::Ks {
            reference,
            inspecting,
            fixture,
            metric,
            test,
            output,
        } => {
            let format = parse_format(&output.format)?;
            let (a, b) = two_samples(
                reference.as_ref(),
                inspecting.as_ref(),
                fixture,
                metric.as_deref(),
            )?;
            let defaults = KsOptions::<f64>::default();
            let options = KsOptions {
                alpha: test.alpha.unwrap_or(defaults.alpha),
                method: match test.p_method.as_deref() {
                    Some(m) => m.parse()?,
                    None => defaults.method,
                },
                mc_trials: test.trials.unwrap_or(defaults.mc_trials),
                mc_seed: test.seed.unwrap_or(defaults.mc_seed),
                ..defaults
            };
            let r = ks_test(&a, &b, &options)?;
            let text = match format {
                ReportFormat::Json => canonical_json(&r),
                ReportFormat::Text | ReportFormat::Csv => {
                    let mut fields = vec![
                        ("d_statistic", format_number(r.d_statistic)),
                        ("n", r.n.to_string()),
                        ("m", r.m.to_string()),
                        ("alpha", format_number(r.alpha)),
                        ("threshold", format_number(r.threshold)),
                        ("p_value", format_number(r.p_value)),
                        ("p_method", json_word(&r.p_method)),
                    ];
                    if let Some(u) = r.p_value_ignoring_ties {
                        fields.push(("p_value_ignoring_ties", format_number(u)));
                    }
                    fields.push(("decision", json_word(&r.decision)));
                    fields.push(("threshold_decision", json_word(&r.threshold_decision)));
                    fields.push(("rules_agree", r.rules_agree.to_string()));
                    let sep = if format == ReportFormat::Csv {
                        ","
                    } else {
                        " = "
                    };
                    let mut s = if format == ReportFormat::Csv {
                        "field,value\n".to_string()
                    } else {
                        String::new()
                    };
                    for (k, v) in fields {
                        s.push_str(&format!("{k}{sep}{v}\n"));
                    }
                    s
                }
            };
            write_output(&text, output.out.as_ref())?;
            Ok(Outcome::Success)
        }
        Command::PlotData {
            input,
            train,
            metric,
            out,
        } => {
            let loaded = input.load()?;
            let text = emit_plot_data(&loaded.corpus, &loaded.registry, &train, &metric)?;
            write_output(&text, out.as_ref())?;
            Ok(Outcome::Success)
        }
        Command::Validate { input } => {
            for line in input.validate()? {
                println!("{line}");
            }
            Ok(Outcome::Success)
        }
        Command::McOracle {
            reference,
            inspecting,
            fixture,
            metric,
            trials,
            seed,
            out,
        } => {
            if trials < MIN_MC_TRIALS {
                return Err(CliError::Input(format!(
                    "--trials must be at least {MIN_MC_TRIALS}"
                )));
            }
            let (a, b) = two_samples(
                reference.as_ref(),
                inspecting.as_ref(),
                fixture,
                metric.as_deref(),
            )?;
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let est = ks_pvalue_montecarlo(&a, &b, trials, seed)?;
            let (lo, hi) = est.interval(3.0);
            let mut text = format!(
                "estimate = {}\nstd_error = {}\ninterval_3sigma = [{}, {}]\nhits = {}\ntrials = {}\nseed = {}\n",
                format_number(est.p_value),
                format_number(est.std_error),
                format_number(lo),
                format_number(hi),
                est.hits,
                est.trials,
                est.seed,
            );
            if let Ok(exact) =
                ks_pvalue_exact_tied(&a, &b, KsOptions::<f64>::default().exact_budget)
            {
                text.push_str(&format!("exact = {}\n", format_number(exact)));
            }
            write_output(&text, out.as_ref())?;
            Ok(Outcome::Success)
        }
        Command::Fixture { config_json, out } => {
            let text = if config_json {
                // Validated on the way out so a broken embed fails loudly.
                let _ = fixture_config();
                FIXTURE_CONFIG_JSON
            } else {
                FIXTURE_RESULTS_CSV
            };
            write_output(text, out.as_ref())?;
            Ok(Outcome::Success)
        }
    }
}

fn json_word<T: serde_json_word::Word>(v: &T) -> String {
    v.word()
}

mod serde_json_word {
    use pra_core::stats::{Decision, PMethodUsed};

    pub trait Word {
        fn word(&self) -> String;
    }

    impl Word for Decision {
        fn word(&self) -> String {
            match self {
                Decision::AcceptNull => "accept_null",
                Decision::RejectNull => "reject_null",
            }
            .to_string()
        }
    }

    impl Word for PMethodUsed {
        fn word(&self) -> String {
            match self {
                PMethodUsed::Exact => "exact",
                PMethodUsed::Asymptotic => "asymptotic",
                PMethodUsed::MonteCarlo => "montecarlo",
            }
            .to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::GateFail) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
