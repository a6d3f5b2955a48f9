use std::fmt::{self, Display, Write as _};
use std::time::Instant;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use slring::closure::ClosureStats;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub brackets: u64,
    pub peak_bits: u64,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub algebra: String,
    pub m: Option<usize>,
    pub field: String,
    pub results: IndexMap<String, Outcome>,
    pub stats: Stats,
    pub cache: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.values().all(|o| o.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// JSON with the timing field zeroed, for comparing runs.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.stats.ms = 0;
        r.to_json()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let m = self.m.map(|m| format!(", m = {m}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "## {} ({} over {}{m})\n",
            self.task, self.algebra, self.field
        );
        let _ = writeln!(s, "| check | expected | actual | pass |");
        let _ = writeln!(s, "|---|---|---|---|");
        for (name, o) in &self.results {
            let mark = if o.pass { "yes" } else { "**no**" };
            let _ = writeln!(s, "| {name} | {} | {} | {mark} |", o.expected, o.actual);
        }
        let _ = writeln!(
            s,
            "\nbrackets: {}, peak bits: {}, {} ms, cache: {}",
            self.stats.brackets, self.stats.peak_bits, self.stats.ms, self.cache
        );
        s
    }
}

pub struct ReportBuilder {
    report: Report,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(
        task: impl Into<String>,
        algebra: impl Into<String>,
        m: Option<usize>,
        field: impl Into<String>,
    ) -> Self {
        ReportBuilder {
            report: Report {
                task: task.into(),
                algebra: algebra.into(),
                m,
                field: field.into(),
                results: IndexMap::new(),
                stats: Stats::default(),
                cache: false,
            },
            start: Instant::now(),
        }
    }

    /// Records a check that passes when both sides print the same.
    pub fn compare(
        &mut self,
        name: impl Into<String>,
        expected: impl Display,
        actual: impl Display,
    ) -> bool {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.record(name, expected, actual, pass)
    }

    pub fn record(
        &mut self,
        name: impl Into<String>,
        expected: impl Display,
        actual: impl Display,
        pass: bool,
    ) -> bool {
        self.report.results.insert(
            name.into(),
            Outcome {
                expected: expected.to_string(),
                actual: actual.to_string(),
                pass,
            },
        );
        pass
    }

    pub fn absorb(&mut self, stats: &ClosureStats) {
        self.report.stats.brackets += stats.brackets as u64;
        self.report.stats.peak_bits = self.report.stats.peak_bits.max(stats.peak_bits);
    }

    pub fn note_peak_bits(&mut self, bits: u64) {
        self.report.stats.peak_bits = self.report.stats.peak_bits.max(bits);
    }

    pub fn cached(&mut self, hit: bool) {
        self.report.cache |= hit;
    }

    pub fn finish(mut self) -> Report {
        self.report.stats.ms = self.start.elapsed().as_millis() as u64;
        self.report
    }
}

/// `pass` or the failure detail.
pub struct Verdict<'a>(pub bool, pub &'a str);

impl Display for Verdict<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 {
            f.write_str("pass")
        } else {
            write!(f, "fail: {}", self.1)
        }
    }
}
