use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pra"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const CONFIG: &str = r#"{
  "datasets": [
    {"id": "T0", "realm": "synthetic", "train_only": true, "role_tag": "neither"},
    {"id": "T1", "realm": "synthetic", "train_only": true, "role_tag": "neither"},
    {"id": "T2", "realm": "synthetic", "train_only": true, "role_tag": "neither"},
    {"id": "R1", "realm": "real_world", "role_tag": "reference"},
    {"id": "R2", "realm": "real_world", "role_tag": "reference"},
    {"id": "R3", "realm": "real_world", "role_tag": "reference"},
    {"id": "I", "realm": "synthetic", "role_tag": "inspecting"}
  ],
  "metrics": ["top1"]
}"#;

/// Results where the inspected dataset ranks the algorithms in reverse.
fn reversed_results() -> String {
    let mut s = String::from("train_dataset,test_dataset,metric,algorithm,value\n");
    for t in 0..3 {
        for test in ["R1", "R2", "R3", "I"] {
            for a in 0..8 {
                let v = if test == "I" {
                    90 - a * 10
                } else {
                    10 + a * 10 + t
                };
                writeln!(s, "T{t},{test},top1,alg{a},{v}.5").unwrap();
            }
        }
    }
    s
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gate_passes_on_fixture() {
    let o = pra(&["analyze", "--fixture", "--gate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict = identical"));
}

#[test]
fn gate_fails_on_reversed_rankings() {
    let dir = tempfile::tempdir().unwrap();
    let results = write(dir.path(), "r.csv", &reversed_results());
    let config = write(dir.path(), "c.json", CONFIG);
    let o = pra(&[
        "analyze",
        "--results",
        &results,
        "--config",
        &config,
        "--gate",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict = different"));
    assert!(stderr(&o).contains("gate"));
    let o = pra(&["analyze", "--results", &results, "--config", &config]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn split_results_files_merge() {
    let dir = tempfile::tempdir().unwrap();
    let text = reversed_results();
    let header = text.lines().next().unwrap();
    let (t0, rest): (Vec<&str>, Vec<&str>) =
        text.lines().skip(1).partition(|l| l.starts_with("T0,"));
    let a = write(
        dir.path(),
        "a.csv",
        &format!("{header}\n{}\n", t0.join("\n")),
    );
    let b = write(
        dir.path(),
        "b.csv",
        &format!("{header}\n{}\n", rest.join("\n")),
    );
    let whole = write(dir.path(), "w.csv", &text);
    let config = write(dir.path(), "c.json", CONFIG);
    let split = pra(&[
        "analyze",
        "--results",
        &a,
        "--results",
        &b,
        "--config",
        &config,
        "--format",
        "json",
    ]);
    let joined = pra(&[
        "analyze",
        "--results",
        &whole,
        "--config",
        &config,
        "--format",
        "json",
    ]);
    assert_eq!(split.status.code(), Some(0), "{}", stderr(&split));
    assert_eq!(stdout(&split), stdout(&joined));
}

#[test]
fn invalid_inputs_exit_2_with_all_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.csv",
        "train_dataset,test_dataset,metric,algorithm,value\nT0,R1,top1,a,1\nT0,R1,top1,a,2\nT0,R2,top1,a,x\n",
    );
    let config = write(dir.path(), "c.json", CONFIG);
    let o = pra(&["validate", "--results", &bad, "--config", &config]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("duplicate key") && err.contains("bad number"),
        "{err}"
    );

    let o = pra(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pra(&["analyze", "--fixture", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pra(&["analyze", "--fixture", "--p-method", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pra(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_dataset_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let results = write(
        dir.path(),
        "r.csv",
        &reversed_results().replace(",I,", ",J,"),
    );
    let config = write(dir.path(), "c.json", CONFIG);
    let o = pra(&["analyze", "--results", &results, "--config", &config]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('J'), "{}", stderr(&o));
}

#[test]
fn validate_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let results = write(dir.path(), "r.csv", &reversed_results());
    let config = write(dir.path(), "c.json", CONFIG);
    let o = pra(&["validate", "--results", &results, "--config", &config]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("96 row(s), 8 algorithm(s)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn report_written_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = pra(&[
        "analyze",
        "--fixture",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let on_stdout = stdout(&pra(&["analyze", "--fixture", "--format", "json"]));
    assert_eq!(fs::read_to_string(out).unwrap(), on_stdout);
}

#[test]
fn fixture_export_reimports_identically() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("fixture.csv");
    let config = dir.path().join("fixture.json");
    pra(&["fixture", "--out", results.to_str().unwrap()]);
    pra(&[
        "fixture",
        "--config-json",
        "--out",
        config.to_str().unwrap(),
    ]);
    let from_files = pra(&[
        "analyze",
        "--results",
        results.to_str().unwrap(),
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let embedded = pra(&["analyze", "--fixture", "--format", "json"]);
    assert_eq!(from_files.status.code(), Some(0), "{}", stderr(&from_files));
    assert_eq!(stdout(&from_files), stdout(&embedded));
}

#[test]
fn tau_table_text_and_metric_filter() {
    let o = pra(&["tau", "--fixture", "--round-taus", "2"]);
    let text = stdout(&o);
    assert!(text.contains("(MSMT17, Market-1501)"));
    assert!(text.contains("--"));
    let csv = stdout(&pra(&[
        "tau",
        "--fixture",
        "--metric",
        "R1",
        "--format",
        "csv",
    ]));
    assert_eq!(csv.lines().count(), 22);
    let o = pra(&["tau", "--fixture", "--metric", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ks_on_sample_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "# reference\n0.1 0.2\n0.3,0.4\n");
    let b = write(dir.path(), "b.txt", "0.5\n0.6 0.7 0.8\n");
    let o = pra(&["ks", &a, &b, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d_statistic"], 1.0);
    assert_eq!(v["p_method"], "exact");
    // 2 of the C(8, 4) = 70 splits are fully separated.
    assert!((v["p_value"].as_f64().unwrap() - 2.0 / 70.0).abs() < 1e-6);

    let empty = write(dir.path(), "e.txt", "# nothing\n");
    assert_eq!(pra(&["ks", &a, &empty]).status.code(), Some(2));
    let junk = write(dir.path(), "j.txt", "1 two 3\n");
    assert_eq!(pra(&["ks", &a, &junk]).status.code(), Some(2));
}

#[test]
fn mc_oracle_brackets_the_exact_value() {
    let o = pra(&[
        "mc-oracle",
        "--fixture",
        "--metric",
        "mAP",
        "--trials",
        "20000",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let field = |k: &str| -> String {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{k} = ")))
            .unwrap()
            .to_string()
    };
    let exact: f64 = field("exact").parse().unwrap();
    let interval = field("interval_3sigma");
    let bounds: Vec<f64> = interval
        .trim_matches(['[', ']'])
        .split(", ")
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(bounds[0] <= exact && exact <= bounds[1], "{text}");
    assert_eq!(field("seed"), "7");
    assert_eq!(
        pra(&[
            "mc-oracle",
            "--fixture",
            "--metric",
            "mAP",
            "--trials",
            "10"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn plot_data_for_training_dataset() {
    let o = pra(&[
        "plot-data",
        "--fixture",
        "--train",
        "CUHK03",
        "--metric",
        "R1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("algorithm,MSMT17,Market-1501,ClonedPerson\n"));
    assert_eq!(text.lines().count(), 11);
    let o = pra(&[
        "plot-data",
        "--fixture",
        "--train",
        "Nowhere",
        "--metric",
        "R1",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(pra(&["--help"]).status.code(), Some(0));
    assert_eq!(pra(&["--version"]).status.code(), Some(0));
}
