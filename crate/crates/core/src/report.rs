//! Check records shared by the exact and numeric verifiers.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One verified statement.
///
/// Exact checks set `exact`; numeric ones set `residual` and `tolerance`.
/// Floating values are rendered as decimal strings so reports are reproducible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_equation_label: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tail_bounds: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms_used: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn exact(name: impl Into<String>, label: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            paper_equation_label: label.into(),
            status: Status::from_bool(holds),
            exact: Some(holds),
            residual: None,
            tolerance: None,
            tail_bounds: Vec::new(),
            terms_used: None,
            detail: None,
        }
    }

    pub fn numeric(
        name: impl Into<String>,
        label: impl Into<String>,
        pass: bool,
        residual: String,
        tolerance: String,
    ) -> Self {
        Self {
            name: name.into(),
            paper_equation_label: label.into(),
            status: Status::from_bool(pass),
            exact: None,
            residual: Some(residual),
            tolerance: Some(tolerance),
            tail_bounds: Vec::new(),
            terms_used: None,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_tails(mut self, tails: Vec<String>) -> Self {
        self.tail_bounds = tails;
        self
    }

    pub fn with_terms(mut self, terms: u64) -> Self {
        self.terms_used = Some(terms);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A named group of checks. Passes iff every record passes.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub records: Vec<CheckRecord>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), records: Vec::new() }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Records a single exact comparison, with `detail` attached on failure.
    pub fn exact(&mut self, name: impl Into<String>, label: &str, holds: bool, detail: impl FnOnce() -> String) {
        let mut r = CheckRecord::exact(name, label, holds);
        if !holds {
            r.detail = Some(detail());
        }
        self.records.push(r);
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }
}
