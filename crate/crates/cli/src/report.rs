use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: what was computed, what it was compared against, and where the expectation
/// comes from.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub expected_from: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub records: Vec<Record>,
    pub overall: Status,
    pub wall_time_ms: u128,
}

pub const WORKED_EXAMPLE: &str = "worked example";
pub const INDEPENDENT: &str = "independent computation";
pub const IDENTITY: &str = "stated identity";

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        RunReport { command: command.into(), seed, records: Vec::new(), overall: Status::Pass, wall_time_ms: 0 }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl ToString,
        expected: impl ToString,
        expected_from: &'static str,
        pass: bool,
    ) {
        let status = if pass { Status::Pass } else { Status::Fail };
        if !pass {
            self.overall = Status::Fail;
        }
        self.records.push(Record {
            name: name.into(),
            anchor: anchor.into(),
            status,
            computed: computed.to_string(),
            expected: expected.to_string(),
            expected_from,
        });
    }

    /// Record whose computed and expected values are compared as strings.
    pub fn compare(&mut self, name: &str, anchor: &str, computed: impl ToString, expected: impl ToString, from: &'static str) {
        let (c, e) = (computed.to_string(), expected.to_string());
        let pass = c == e;
        self.push(name, anchor, c, e, from, pass);
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.wall_time_ms = elapsed.as_millis();
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = if r.status == Status::Pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag} {} ({})", r.name, r.anchor);
            let _ = writeln!(s, "     computed: {}", r.computed);
            let _ = writeln!(s, "     expected: {} [{}]", r.expected, r.expected_from);
        }
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{overall}: {} checks, seed {}, {} ms", self.records.len(), self.seed, self.wall_time_ms);
        s
    }
}
