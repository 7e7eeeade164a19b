use std::fmt::{self, Display};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    SkippedOpen,
}

impl Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::SkippedOpen => "SKIPPED-OPEN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
}

impl Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<12} {:<7}", self.status, self.suite)?;
        match self.m {
            Some(m) => write!(f, " m={m:<3}")?,
            None => f.write_str("      ")?,
        }
        match self.degree {
            Some(d) => write!(f, " deg={d:<3}")?,
            None => f.write_str("        ")?,
        }
        write!(f, " {}: expected {} got {}", self.label, self.expected, self.computed)
    }
}

/// Flat list of checks; a report passes when nothing in it failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check<T: PartialEq + Display + ?Sized>(
        &mut self,
        suite: &str,
        m: Option<u32>,
        degree: Option<usize>,
        label: &str,
        expected: &T,
        computed: &T,
    ) -> bool {
        let ok = expected == computed;
        self.push(suite, m, degree, label, expected.to_string(), computed.to_string(), ok);
        ok
    }

    pub fn assert(&mut self, suite: &str, m: Option<u32>, degree: Option<usize>, label: &str, ok: bool) -> bool {
        self.push(suite, m, degree, label, "true".into(), ok.to_string(), ok);
        ok
    }

    pub fn skip_open(&mut self, suite: &str, m: Option<u32>, degree: Option<usize>, label: &str) {
        self.checks.push(Check {
            suite: suite.into(),
            m,
            degree,
            label: label.into(),
            expected: "-".into(),
            computed: "-".into(),
            status: CheckStatus::SkippedOpen,
        });
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        suite: &str,
        m: Option<u32>,
        degree: Option<usize>,
        label: &str,
        expected: String,
        computed: String,
        ok: bool,
    ) {
        self.checks.push(Check {
            suite: suite.into(),
            m,
            degree,
            label: label.into(),
            expected,
            computed,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} checks: {} passed, {} failed, {} skipped (open)",
            self.len(),
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::SkippedOpen)
        )
    }
}
