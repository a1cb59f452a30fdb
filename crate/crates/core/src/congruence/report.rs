use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

/// Serializes a big integer as a decimal string.
pub(crate) fn decimal<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// At most this many counterexamples are kept per report; the total is
/// still counted.
pub const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StatementKind {
    Theorem,
    Conjecture,
}

impl Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatementKind::Theorem => "THEOREM",
            StatementKind::Conjecture => "CONJECTURE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub point: BTreeMap<String, i64>,
    /// Values involved, as decimal strings.
    pub witness: BTreeMap<String, String>,
}

/// Outcome of evaluating a statement over a parameter grid.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: StatementKind,
    pub grid: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub points_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Length of the longest coefficient prefix computed.
    pub long_prefix_order: Option<usize>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl PartialEq for CheckReport {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.kind == other.kind
            && self.grid == other.grid
            && self.notes == other.notes
            && self.points_checked == other.points_checked
            && self.counterexample_count == other.counterexample_count
            && self.counterexamples == other.counterexamples
            && self.long_prefix_order == other.long_prefix_order
    }
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }

    pub fn status(&self) -> &'static str {
        match (self.passed(), self.kind) {
            (true, StatementKind::Theorem) => "pass",
            (true, StatementKind::Conjecture) => "no counterexample in range",
            (false, _) => "FAIL",
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let grid: Vec<String> = self.grid.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "[{}] {}: {} ({} points, {} counterexamples; {})",
            self.kind,
            self.name,
            self.status(),
            self.points_checked,
            self.counterexample_count,
            grid.join(" ")
        )
    }

    /// Folds another report's points and counterexamples into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.points_checked += other.points_checked;
        self.counterexample_count += other.counterexample_count;
        let room = MAX_WITNESSES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
        self.long_prefix_order = self.long_prefix_order.max(other.long_prefix_order);
        self.runtime += other.runtime;
    }

    /// Combines per-point reports, in the order given, under one name.
    pub fn merge(name: &str, kind: StatementKind, parts: Vec<CheckReport>) -> CheckReport {
        let mut out = ReportBuilder::new(name, kind).finish();
        for part in parts {
            out.absorb(part);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    check: &'a str,
    kind: StatementKind,
    status: &'a str,
    grid: String,
    points_checked: u64,
    counterexamples: u64,
    long_prefix_order: String,
    notes: String,
}

#[derive(Serialize)]
struct WitnessRow<'a> {
    report: &'a str,
    check: &'a str,
    point: String,
    witness: String,
}

fn join_map<V: Display>(map: &BTreeMap<String, V>) -> String {
    map.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// One CSV row per report.
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(SummaryRow {
            check: &r.name,
            kind: r.kind,
            status: r.status(),
            grid: join_map(&r.grid),
            points_checked: r.points_checked,
            counterexamples: r.counterexample_count,
            long_prefix_order: r.long_prefix_order.map(|o| o.to_string()).unwrap_or_default(),
            notes: r.notes.join("; "),
        })
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// One CSV row per kept counterexample.
pub fn counterexamples_to_csv(reports: &[CheckReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["report", "check", "point", "witness"]).expect("csv header");
    for r in reports {
        for c in &r.counterexamples {
            w.serialize(WitnessRow {
                report: &r.name,
                check: &c.check,
                point: join_map(&c.point),
                witness: join_map(&c.witness),
            })
            .expect("csv row");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

/// Accumulates points into a [`CheckReport`].
pub struct ReportBuilder {
    report: CheckReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(name: &str, kind: StatementKind) -> Self {
        ReportBuilder {
            report: CheckReport {
                name: name.to_string(),
                kind,
                grid: BTreeMap::new(),
                notes: Vec::new(),
                points_checked: 0,
                counterexample_count: 0,
                counterexamples: Vec::new(),
                long_prefix_order: None,
                runtime: Duration::ZERO,
            },
            started: Instant::now(),
        }
    }

    pub fn grid(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.report.grid.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.report.notes.push(text.into());
        self
    }

    pub fn prefix_order(&mut self, order: usize) -> &mut Self {
        self.report.long_prefix_order = self.report.long_prefix_order.max(Some(order));
        self
    }

    /// Records one grid point. `witness` is only evaluated on failure.
    pub fn record<W>(&mut self, point: &[(&str, i64)], ok: bool, witness: W)
    where
        W: FnOnce() -> Vec<(&'static str, String)>,
    {
        self.report.points_checked += 1;
        if ok {
            return;
        }
        self.report.counterexample_count += 1;
        if self.report.counterexamples.len() < MAX_WITNESSES {
            self.report.counterexamples.push(Counterexample {
                check: self.report.name.clone(),
                point: point.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                witness: witness().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            });
        }
    }

    pub fn finish(mut self) -> CheckReport {
        self.report.runtime = self.started.elapsed();
        self.report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_witnesses_but_counts_all() {
        let mut b = ReportBuilder::new("demo", StatementKind::Theorem);
        b.grid("n", "1..=30");
        for n in 0..30 {
            b.record(&[("n", n)], n % 3 != 0, || vec![("value", n.to_string())]);
        }
        let r = b.finish();
        assert_eq!(r.points_checked, 30);
        assert_eq!(r.counterexample_count, 10);
        assert!(!r.passed());
        assert_eq!(r.status(), "FAIL");
    }

    #[test]
    fn serializations_are_stable() {
        let mut b = ReportBuilder::new("demo", StatementKind::Conjecture);
        b.grid("p", 3).grid("m", "1..=4");
        b.record(&[("n", 1)], false, || vec![("value", "123456789012345678901234567890".into())]);
        let r = b.finish();
        let json = r.to_json();
        assert!(json.contains("\"123456789012345678901234567890\""));
        assert!(!json.contains("runtime"));
        let csv = reports_to_csv(std::slice::from_ref(&r));
        assert!(csv.starts_with("check,kind,status,grid"));
        assert!(csv.contains("CONJECTURE"));
        assert!(counterexamples_to_csv(&[r]).contains("n=1"));
    }

    #[test]
    fn merge_keeps_order() {
        let parts = (0..3)
            .map(|i| {
                let mut b = ReportBuilder::new("part", StatementKind::Theorem);
                b.record(&[("i", i)], i != 1, Vec::new);
                b.finish()
            })
            .collect();
        let merged = CheckReport::merge("all", StatementKind::Theorem, parts);
        assert_eq!(merged.points_checked, 3);
        assert_eq!(merged.counterexamples[0].point["i"], 1);
    }
}
