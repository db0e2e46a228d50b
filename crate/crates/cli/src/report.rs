use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded measurement with no pass/fail oracle.
    Measured,
}

impl Status {
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }

    pub fn exit_code(self) -> i32 {
        if self.is_ok() {
            0
        } else {
            1
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Measured => "measured",
        })
    }
}

/// Outcome of one check. Wall-clock timing is kept out so that reports are
/// byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub seed: u64,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub profile: String,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub measured: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(profile: &str, checks: Vec<CheckReport>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, measured) = (count(Status::Pass), count(Status::Fail), count(Status::Measured));
        let status = if failed == 0 { Status::Pass } else { Status::Fail };
        SuiteReport { profile: profile.to_owned(), status, passed, failed, measured, checks }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects failures and measurements while a check runs.
#[derive(Debug, Default)]
pub(crate) struct Findings {
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

/// Failures beyond this many are counted, not listed.
const MAX_WITNESSES: usize = 20;

impl Findings {
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    /// Failures decide the status; with none, the notes become the witnesses.
    pub fn finish(self, check: &str, parameters: Map<String, Value>, seed: u64, clean: Status) -> CheckReport {
        let (status, mut witnesses) = if self.failures.is_empty() {
            (clean, self.notes)
        } else {
            (Status::Fail, self.failures)
        };
        if witnesses.len() > MAX_WITNESSES {
            let extra = witnesses.len() - MAX_WITNESSES;
            witnesses.truncate(MAX_WITNESSES);
            witnesses.push(format!("... and {extra} more"));
        }
        CheckReport { check: check.to_owned(), parameters, status, witnesses, seed }
    }
}
