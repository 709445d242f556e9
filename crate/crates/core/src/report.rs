use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum number of witnesses retained in a report.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    SampledPass,
    Fail,
}

impl Status {
    pub fn passed(self) -> bool {
        !matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::SampledPass => "sampled-pass",
            Status::Fail => "fail",
        })
    }
}

/// A concrete tuple of elements at which `rule` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rule: String,
    pub elements: Vec<usize>,
}

impl Witness {
    pub fn new(rule: impl Into<String>, elements: Vec<usize>) -> Self {
        Witness { rule: rule.into(), elements }
    }
}

/// Structured pass/fail evidence for a single named check.
///
/// A failing report always carries at least one witness. Witnesses are kept in
/// lexicographic order of their element tuples (per rule), capped at
/// [`MAX_WITNESSES`]; `violations` counts all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            status: Status::Pass,
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn mark_sampled(&mut self) {
        if self.status == Status::Pass {
            self.status = Status::SampledPass;
        }
    }

    pub fn record(&mut self, rule: &str, elements: Vec<usize>) {
        self.status = Status::Fail;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness::new(rule, elements));
        }
    }

    /// Folds the outcome of a scan into this report under the given rule name.
    pub fn absorb(&mut self, rule: &str, scan: crate::scan::Scan) {
        self.checked += scan.checked;
        if scan.sampled {
            self.mark_sampled();
        }
        if scan.violations > 0 {
            self.status = Status::Fail;
            self.violations += scan.violations;
            for w in scan.witnesses {
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(Witness::new(rule, w));
                }
            }
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        if other.status == Status::SampledPass {
            self.mark_sampled();
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
            self.violations += other.violations;
            for w in other.witnesses {
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(w);
                }
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} checked", self.check, self.status, self.checked)?;
        if self.violations > 0 {
            write!(f, ", {} violations", self.violations)?;
        }
        f.write_str(")")?;
        for w in &self.witnesses {
            write!(f, "; {} at {:?}", w.rule, w.elements)?;
        }
        Ok(())
    }
}
