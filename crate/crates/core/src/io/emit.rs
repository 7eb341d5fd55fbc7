use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pipeline::{
    DatasetDescriptor, DatasetRegistry, GroupTag, PairKey, PraReport, ResultCorpus, TauEntry,
};
use crate::scalar::{round_to, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

const FRACTION_DIGITS: i32 = 6;

fn round6(v: f64) -> f64 {
    let scale = 10f64.powi(FRACTION_DIGITS);
    let r = (v * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A number rounded to 6 fractional digits, printed in its shortest form.
pub fn format_number(v: f64) -> String {
    format!("{}", round6(v))
}

fn round_json_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let r = round6(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_json_floats),
        Value::Object(map) => map.values_mut().for_each(round_json_floats),
        _ => {}
    }
}

/// Pretty JSON with sorted keys and floats rounded to 6 fractional digits.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize to JSON");
    round_json_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON value prints");
    s.push('\n');
    s
}

pub fn parse_report_json(text: &str) -> Result<PraReport<f64>> {
    Ok(serde_json::from_str(text)?)
}

/// Tau values of a set of pairs, with the layout context needed to render them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauTable<F> {
    pub datasets: Vec<DatasetDescriptor>,
    pub metrics: Vec<String>,
    pub tau_rounding: Option<u32>,
    pub entries: Vec<TauEntry<F>>,
}

impl<F: Scalar> TauTable<F> {
    /// Tau as displayed: rounded when a rounding is configured.
    pub fn shown_tau(&self, entry: &TauEntry<F>) -> F {
        match self.tau_rounding {
            Some(d) => round_to(entry.record.tau, d),
            None => entry.record.tau,
        }
    }

    pub fn only_metric(mut self, metric: &str) -> Result<Self> {
        if !self.metrics.iter().any(|m| m == metric) {
            return Err(Error::UnknownMetric(metric.to_string()));
        }
        self.metrics.retain(|m| m == metric);
        self.entries.retain(|e| e.pair.metric == metric);
        Ok(self)
    }

    fn cell_digits(&self) -> usize {
        self.tau_rounding.map_or(2, |d| d as usize)
    }
}

fn group_rank(tag: GroupTag) -> u8 {
    match tag {
        GroupTag::Reference => 0,
        GroupTag::Inspecting => 1,
        GroupTag::Excluded => 2,
    }
}

/// Test-pair rows x (training dataset, metric) columns; `--` marks pairs that
/// are inadmissible for that training dataset.
fn render_tau_matrix<F: Scalar>(table: &TauTable<F>) -> String {
    let pos = |id: &str| {
        table
            .datasets
            .iter()
            .position(|d| d.id == id)
            .unwrap_or(usize::MAX)
    };
    let mut trains: Vec<&str> = Vec::new();
    for d in &table.datasets {
        if table.entries.iter().any(|e| e.pair.train == d.id) {
            trains.push(&d.id);
        }
    }
    let mut rows: Vec<(u8, usize, usize, &str, &str)> = Vec::new();
    for e in &table.entries {
        let (a, b) = (e.pair.test_a.as_str(), e.pair.test_b.as_str());
        let (a, b) = if pos(a) <= pos(b) { (a, b) } else { (b, a) };
        let row = (group_rank(e.group), pos(a), pos(b), a, b);
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    rows.sort();

    let digits = table.cell_digits();
    let labels: Vec<String> = rows.iter().map(|r| format!("({}, {})", r.3, r.4)).collect();
    let label_w = labels
        .iter()
        .map(String::len)
        .chain(["Training dataset".len()])
        .max()
        .unwrap_or(0)
        + 2;
    let n_metrics = table.metrics.len().max(1);
    let mut cell_w = table
        .metrics
        .iter()
        .map(|m| m.len() + 2)
        .chain([digits + 5, 6])
        .max()
        .unwrap_or(6);
    for t in &trains {
        cell_w = cell_w.max((t.len() + 2).div_ceil(n_metrics));
    }

    let mut out = String::new();
    let _ = write!(out, "{:<label_w$}", "Training dataset");
    for t in &trains {
        let _ = write!(out, "{:<w$}", t, w = cell_w * n_metrics);
    }
    out = out.trim_end().to_string();
    out.push('\n');
    let mut line = format!("{:<label_w$}", "Kendall's tau");
    for _ in &trains {
        for m in &table.metrics {
            let _ = write!(line, "{m:<cell_w$}");
        }
    }
    out.push_str(line.trim_end());
    out.push('\n');

    if rows.is_empty() {
        out.push_str("(no admissible pairs)\n");
        return out;
    }
    let rule = "-".repeat(label_w + cell_w * n_metrics * trains.len());
    out.push_str(&rule);
    out.push('\n');
    let mut last_group = None;
    for (row, label) in rows.iter().zip(&labels) {
        if last_group.is_some_and(|g| g != row.0) {
            out.push_str(&rule);
            out.push('\n');
        }
        last_group = Some(row.0);
        let mut line = format!("{label:<label_w$}");
        for t in &trains {
            for m in &table.metrics {
                let key = PairKey::new(*t, row.3, row.4, m.as_str());
                let cell = table.entries.iter().find(|e| e.pair == key).map_or_else(
                    || "--".to_string(),
                    |e| format!("{:.digits$}", table.shown_tau(e).to_f64_lossy()),
                );
                let _ = write!(line, "{cell:<cell_w$}");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn group_label(tag: GroupTag) -> &'static str {
    match tag {
        GroupTag::Reference => "reference",
        GroupTag::Inspecting => "inspecting",
        GroupTag::Excluded => "excluded",
    }
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn tau_csv<F: Scalar>(table: &TauTable<F>) -> String {
    let mut out = String::from(
        "train_dataset,test_a,test_b,metric,group,tau,n_concordant,n_discordant,n0,n1,n2,n_xy_tied\n",
    );
    for e in &table.entries {
        let tau = table.shown_tau(e).to_f64_lossy();
        let tau = match table.tau_rounding {
            Some(d) => format!("{:.*}", d as usize, tau),
            None => format_number(tau),
        };
        let c = e.record.counts;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            e.pair.train,
            e.pair.test_a,
            e.pair.test_b,
            e.pair.metric,
            group_label(e.group),
            tau,
            c.n_concordant,
            c.n_discordant,
            c.n0,
            c.n1,
            c.n2,
            c.n_xy_tied
        );
    }
    out
}

pub fn emit_tau_table<F: Scalar + Serialize>(table: &TauTable<F>, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_tau_matrix(table),
        ReportFormat::Csv => tau_csv(table),
        ReportFormat::Json => {
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "pair": e.pair,
                        "group": e.group,
                        "tau": table.shown_tau(e).to_f64_lossy(),
                        "record": e.record,
                    })
                })
                .collect();
            canonical_json(&serde_json::json!({
                "metrics": table.metrics,
                "tau_rounding": table.tau_rounding,
                "entries": entries,
            }))
        }
    }
}

fn report_text<F: Scalar>(report: &PraReport<F>) -> String {
    let p = &report.provenance;
    let mut out = String::new();
    let _ = writeln!(out, "Pairwise ranking analysis ({} {})", p.tool, p.version);
    let _ = writeln!(
        out,
        "alpha = {}, p-method = {}, tau rounding = {}",
        format_number(p.alpha.to_f64_lossy()),
        snake(&p.p_method),
        p.tau_rounding.map_or("none".to_string(), |d| d.to_string())
    );
    out.push('\n');

    let table = TauTable {
        datasets: p.datasets.clone(),
        metrics: p.metrics.clone(),
        tau_rounding: p.tau_rounding,
        entries: report.tau_table.clone(),
    };
    out.push_str(&render_tau_matrix(&table));
    out.push('\n');

    for s in &report.summaries {
        let g = report.group_for(&s.metric);
        let _ = writeln!(
            out,
            "Mean tau [{}]  reference: {:.4} ± {:.3} (n = {})  inspecting: {:.4} ± {:.3} (m = {})",
            s.metric,
            s.reference.mean.to_f64_lossy(),
            s.reference.std.to_f64_lossy(),
            g.map_or(0, |g| g.n),
            s.inspecting.mean.to_f64_lossy(),
            s.inspecting.std.to_f64_lossy(),
            g.map_or(0, |g| g.m),
        );
    }
    out.push('\n');
    for (k, v) in report.ks.iter().zip(&report.verdicts) {
        let r = &k.result;
        let _ = write!(
            out,
            "KS test [{}]: D = {:.4}, threshold = {:.4} (alpha = {}), p-value = {:.4} ({})",
            k.metric,
            r.d_statistic.to_f64_lossy(),
            r.threshold.to_f64_lossy(),
            format_number(r.alpha.to_f64_lossy()),
            r.p_value.to_f64_lossy(),
            snake(&r.p_method),
        );
        if let Some(untied) = r.p_value_ignoring_ties {
            let _ = write!(out, ", ignoring ties = {:.4}", untied.to_f64_lossy());
        }
        let _ = writeln!(
            out,
            "\n  decision = {}, threshold rule = {}, verdict = {}",
            snake(&r.decision),
            snake(&r.threshold_decision),
            snake(&v.verdict)
        );
    }
    let dis = &report.diagnostics.rule_disagreements;
    let _ = writeln!(
        out,
        "\nRule disagreements: {}",
        if dis.is_empty() {
            "none".to_string()
        } else {
            dis.join(", ")
        }
    );
    out
}

fn report_csv<F: Scalar>(report: &PraReport<F>) -> String {
    let mut out = String::from("section,metric,train_dataset,test_a,test_b,field,value\n");
    let mut row =
        |section: &str, metric: &str, pair: Option<&PairKey>, field: &str, value: String| {
            let (train, a, b) = pair.map_or(("", "", ""), |p| {
                (p.train.as_str(), p.test_a.as_str(), p.test_b.as_str())
            });
            let _ = writeln!(out, "{section},{metric},{train},{a},{b},{field},{value}");
        };
    let num = |v: F| format_number(v.to_f64_lossy());
    for e in &report.tau_table {
        let c = e.record.counts;
        let m = e.pair.metric.as_str();
        let p = Some(&e.pair);
        row("tau", m, p, "group", group_label(e.group).to_string());
        row("tau", m, p, "tau", num(e.record.tau));
        for (field, v) in [
            ("n_concordant", c.n_concordant),
            ("n_discordant", c.n_discordant),
            ("n0", c.n0),
            ("n1", c.n1),
            ("n2", c.n2),
            ("n_xy_tied", c.n_xy_tied),
        ] {
            row("tau", m, p, field, v.to_string());
        }
    }
    for g in &report.groups {
        for (label, entries) in [("reference", &g.reference), ("inspecting", &g.inspecting)] {
            for e in entries {
                row("group", &g.metric, Some(&e.pair), label, num(e.tau));
            }
        }
    }
    for s in &report.summaries {
        row(
            "summary",
            &s.metric,
            None,
            "reference_mean",
            num(s.reference.mean),
        );
        row(
            "summary",
            &s.metric,
            None,
            "reference_std",
            num(s.reference.std),
        );
        row(
            "summary",
            &s.metric,
            None,
            "inspecting_mean",
            num(s.inspecting.mean),
        );
        row(
            "summary",
            &s.metric,
            None,
            "inspecting_std",
            num(s.inspecting.std),
        );
    }
    for k in &report.ks {
        let r = &k.result;
        let m = k.metric.as_str();
        row("ks", m, None, "d_statistic", num(r.d_statistic));
        row("ks", m, None, "n", r.n.to_string());
        row("ks", m, None, "m", r.m.to_string());
        row("ks", m, None, "alpha", num(r.alpha));
        row("ks", m, None, "threshold", num(r.threshold));
        row("ks", m, None, "p_value", num(r.p_value));
        row("ks", m, None, "p_method", snake(&r.p_method));
        if let Some(u) = r.p_value_ignoring_ties {
            row("ks", m, None, "p_value_ignoring_ties", num(u));
        }
        row("ks", m, None, "decision", snake(&r.decision));
        row(
            "ks",
            m,
            None,
            "threshold_decision",
            snake(&r.threshold_decision),
        );
        row("ks", m, None, "rules_agree", r.rules_agree.to_string());
    }
    for v in &report.verdicts {
        row("verdict", &v.metric, None, "verdict", snake(&v.verdict));
    }
    for c in &report.diagnostics.crossings {
        row(
            "crossing",
            &c.pair.metric,
            Some(&c.pair),
            "crossings",
            c.crossings.to_string(),
        );
    }
    out
}

/// Renders a report; output bytes depend only on the report contents.
pub fn emit_report<F: Scalar + Serialize>(report: &PraReport<F>, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report_text(report),
        ReportFormat::Json => canonical_json(report),
        ReportFormat::Csv => report_csv(report),
    }
}

/// Per-algorithm score series across the admissible test datasets of one
/// training dataset: one row per algorithm, one column per test dataset
/// (registry order).
pub fn emit_plot_data(
    corpus: &ResultCorpus,
    registry: &DatasetRegistry,
    train: &str,
    metric: &str,
) -> Result<String> {
    if !corpus.metrics().iter().any(|m| m == metric) {
        return Err(Error::UnknownMetric(metric.to_string()));
    }
    let table = corpus
        .table(train, metric)
        .ok_or_else(|| Error::UnknownDataset(train.to_string()))?;
    for test in table.keys() {
        registry.require(test)?;
    }
    let columns: Vec<&str> = registry
        .datasets()
        .iter()
        .filter(|d| d.id != train && !d.train_only && table.contains_key(&d.id))
        .map(|d| d.id.as_str())
        .collect();

    let mut out = String::from("algorithm");
    for c in &columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (i, alg) in corpus.algorithms().iter().enumerate() {
        out.push_str(alg);
        for c in &columns {
            let _ = write!(out, ",{}", table[*c][i]);
        }
        out.push('\n');
    }
    Ok(out)
}
