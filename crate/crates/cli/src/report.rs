use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::Cli;

/// What a command produced before it is wrapped into a [`Report`].
pub type Outcome = std::result::Result<Checked, Failure>;

#[derive(Debug)]
pub struct Checked {
    pub result: Value,
    pub holds: bool,
    /// Some check could not finish within its search budget.
    pub budget_exceeded: bool,
}

impl Checked {
    pub fn new(result: impl Serialize, holds: bool) -> Self {
        Checked { result: serde_json::to_value(result).expect("reports are plain data"), holds, budget_exceeded: false }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(nss_core::Error),
    Io(String),
}

impl From<nss_core::Error> for Failure {
    fn from(e: nss_core::Error) -> Self {
        Failure::Core(e)
    }
}

#[derive(Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u128,
}

/// The JSON document every command prints. Only `timing` varies between
/// runs with the same arguments.
#[derive(Serialize)]
pub struct Report {
    command: &'static str,
    version: &'static str,
    config: Value,
    holds: bool,
    exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
    timing: Timing,
}

impl Report {
    pub fn new(cli: &Cli, outcome: Outcome, elapsed: Duration) -> Self {
        let (result, error, holds, exit_code) = match outcome {
            Ok(c) => {
                let code = match (c.holds, c.budget_exceeded) {
                    (true, _) => 0,
                    (false, true) => 3,
                    (false, false) => 1,
                };
                (Some(c.result), None, c.holds, code)
            }
            Err(f) => {
                let (kind, message, code) = match f {
                    Failure::Usage(m) => ("Usage", m, 2),
                    Failure::Io(m) => ("Io", m, 2),
                    Failure::Core(e) => {
                        let code = if matches!(e, nss_core::Error::BudgetExceeded { .. }) { 3 } else { 2 };
                        (e.kind(), e.to_string(), code)
                    }
                };
                (None, Some(ErrorReport { kind, message }), false, code)
            }
        };
        Report {
            command: cli.command.name(),
            version: env!("CARGO_PKG_VERSION"),
            config: serde_json::to_value(cli).expect("arguments are plain data"),
            holds,
            exit_code,
            result,
            error,
            timing: Timing { elapsed_ms: elapsed.as_millis() },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.exit_code
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain data")
    }
}
