use std::fmt::Write;

use pra_core::io::{
    canonical_json, emit_plot_data, emit_report, emit_tau_table, fixture_config, load_fixture,
    parse_report_json, parse_results, ReportFormat, ResultsFile, TauTable, FIXTURE_RESULTS_CSV,
};
use pra_core::pipeline::{run_pra, tau_table, PraConfig};
use pra_core::{Decimal, ValidationError};
use proptest::prelude::*;
use sha2::{Digest, Sha256};

const FIXTURE_SHA256: &str = "9862c702ba203bb2ee6d79ed7b8b0caa59869b8424845777c96a62016aeb24c1";

#[test]
fn fixture_checksum_is_pinned() {
    let digest = Sha256::digest(FIXTURE_RESULTS_CSV.as_bytes());
    let hex: String = digest.iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    });
    assert_eq!(hex, FIXTURE_SHA256);
}

#[test]
fn fixture_serializes_and_validates() {
    let file = parse_results(FIXTURE_RESULTS_CSV).unwrap();
    assert_eq!(file.rows().len(), 340);
    assert_eq!(file.to_csv(), FIXTURE_RESULTS_CSV);
    let (corpus, _) = load_fixture();
    let again = ResultsFile::from_corpus(&corpus);
    assert_eq!(parse_results(&again.to_csv()).unwrap().to_corpus(), corpus);
}

#[test]
fn all_violations_are_reported_together() {
    let text = "train_dataset,test_dataset,metric,algorithm,value\n\
                A,B,R1,x,1.0\n\
                A,B,R1,x,2.0\n\
                A,B,R1,y,abc\n\
                A,C,R1,x,1.0\n\
                A,C,R1,y,1.0000001\n";
    let errs = parse_results(text).unwrap_err().0;
    assert!(errs
        .iter()
        .any(|e| matches!(e, ValidationError::DuplicateKey { line: 3, .. })));
    assert!(errs
        .iter()
        .any(|e| matches!(e, ValidationError::BadNumber { line: 4, .. })));
    assert!(errs
        .iter()
        .any(|e| matches!(e, ValidationError::BadNumber { line: 6, .. })));
    assert!(errs.len() >= 3);
}

#[test]
fn ragged_matrix_names_the_block() {
    let text = "train_dataset,test_dataset,metric,algorithm,value\n\
                A,B,R1,x,1\nA,B,R1,y,2\nA,C,R1,x,1\n";
    let errs = parse_results(text).unwrap_err();
    assert!(
        errs.to_string()
            .contains("ragged matrix in block (A, C, R1)"),
        "{errs}"
    );
}

#[test]
fn wrong_header_is_a_schema_error() {
    let errs = parse_results("train,test,metric,algorithm,value\n")
        .unwrap_err()
        .0;
    assert!(matches!(errs[..], [ValidationError::Schema(_)]));
}

#[test]
fn report_json_round_trips_byte_identically() {
    let (corpus, registry) = load_fixture();
    let report = run_pra(&corpus, &registry, &PraConfig::<f64>::default()).unwrap();
    let json = emit_report(&report, ReportFormat::Json);
    let parsed = parse_report_json(&json).unwrap();
    assert_eq!(canonical_json(&parsed), json);
    assert_eq!(parsed.verdicts, report.verdicts);
}

#[test]
fn text_and_csv_reports_are_stable() {
    let (corpus, registry) = load_fixture();
    let report = run_pra(&corpus, &registry, &PraConfig::<f64>::default()).unwrap();
    let text = emit_report(&report, ReportFormat::Text);
    assert!(text.contains("(MSMT17, ClonedPerson)"));
    assert!(text.contains("threshold = 0.5989"));
    assert_eq!(text, emit_report(&report, ReportFormat::Text));
    let csv = emit_report(&report, ReportFormat::Csv);
    assert!(csv.starts_with("section,metric,train_dataset,test_a,test_b,field,value\n"));
}

#[test]
fn rounded_tau_table_shows_two_decimals() {
    let (corpus, registry) = load_fixture();
    let table = TauTable {
        datasets: registry.datasets().to_vec(),
        metrics: corpus.metrics().to_vec(),
        tau_rounding: Some(2),
        entries: tau_table::<f64>(&corpus, &registry).unwrap(),
    };
    let csv = emit_tau_table(&table.only_metric("mAP").unwrap(), ReportFormat::Csv);
    assert_eq!(csv.lines().count(), 22);
    assert!(csv.lines().skip(1).all(|l| l.contains(",mAP,")));
}

#[test]
fn plot_data_has_one_inversion_between_adjacent_reference_columns() {
    let (corpus, registry) = load_fixture();
    let plot = emit_plot_data(&corpus, &registry, "CUHK03", "R1").unwrap();
    let mut lines = plot.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        ["algorithm", "MSMT17", "Market-1501", "ClonedPerson"]
    );
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(rows.len(), 10);
    let mut inversions = 0;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if (rows[i].0 - rows[j].0) * (rows[i].1 - rows[j].1) < 0.0 {
                inversions += 1;
            }
        }
    }
    assert_eq!(inversions, 1);
}

#[test]
fn fixture_config_is_valid() {
    let cfg = fixture_config();
    assert_eq!(cfg.datasets.len(), 6);
    let again = pra_core::io::ConfigFile::parse(&cfg.to_json()).unwrap();
    assert_eq!(again, cfg);
}

fn results_strategy() -> impl Strategy<Value = String> {
    (1usize..3, 1usize..4, 1usize..3, 1usize..5).prop_flat_map(|(trains, tests, metrics, algs)| {
        let cells = trains * tests * metrics * algs;
        prop::collection::vec((0i64..200_000_000, 0u8..=6), cells).prop_map(move |vals| {
            let mut s = String::from("train_dataset,test_dataset,metric,algorithm,value\n");
            let mut it = vals.into_iter();
            for t in 0..trains {
                for d in 0..tests {
                    for m in 0..metrics {
                        for a in 0..algs {
                            let (micros, digits) = it.next().unwrap();
                            let scale = 10i64.pow(6 - u32::from(digits));
                            let v = Decimal::from_micros(micros / scale * scale, digits);
                            writeln!(s, "train{t},test \"{d}\",metric{m},alg {a},{v}").unwrap();
                        }
                    }
                }
            }
            s
        })
    })
}

proptest! {
    #[test]
    fn parse_then_serialize_is_identity(text in results_strategy()) {
        let file = parse_results(&text).unwrap();
        let out = file.to_csv();
        prop_assert_eq!(parse_results(&out).unwrap(), file.clone());
        prop_assert_eq!(parse_results(&out).unwrap().to_csv(), out);
    }

    #[test]
    fn decimal_display_round_trips(micros in -10_000_000_000i64..10_000_000_000, digits in 0u8..=6) {
        let scale = 10i64.pow(6 - u32::from(digits));
        let d = Decimal::from_micros(micros / scale * scale, digits);
        prop_assert_eq!(d.to_string().parse::<Decimal>().unwrap(), d);
    }
}
