use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

/// The machine-readable result of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, status: Status, payload: Value) -> Self {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            status,
            payload,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only serializable data")
    }

    /// 1 for a failed check, 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(self.status == Status::Fail)
    }
}

/// A report together with its plain-text rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
}
