use braidimg::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

/// One named item of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            status,
            detail,
        }
    }

    pub fn from_bool(name: &str, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, None)
    }

    pub fn from_result(name: &str, r: Result<bool>) -> Self {
        match r {
            Ok(ok) => Self::from_bool(name, ok),
            Err(e) => Self::new(name, Status::Error, Some(e.to_string())),
        }
    }

    pub fn expect<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> Self {
        let status = if got == want {
            Status::Pass
        } else {
            Status::Fail
        };
        Self::new(
            name,
            status,
            Some(format!("got {got:?}, expected {want:?}")),
        )
    }

    pub fn skipped(name: &str, why: impl Into<String>) -> Self {
        Self::new(name, Status::Skipped, Some(why.into()))
    }

    pub fn is_ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Skipped)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refused,
}

impl Verdict {
    pub fn of<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Self {
        if checks.into_iter().all(Check::is_ok) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => crate::EXIT_PASS,
            Verdict::Fail => crate::EXIT_MISMATCH,
            Verdict::Refused => crate::EXIT_USAGE,
        }
    }
}
