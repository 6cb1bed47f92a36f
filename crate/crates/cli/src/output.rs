//! The envelope printed by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Command name plus the parameters that determine the result. Flags that
/// only affect how a result is reached (checkpoints, threads) are left out,
/// so equal inputs give equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Echo {
    pub name: String,
    pub args: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: Echo,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

/// What a command hands back to `main`.
pub struct Report {
    pub echo: Echo,
    pub payload: Value,
    pub text: String,
    /// 0, or 1 when a search came back empty.
    pub code: i32,
}

impl Report {
    pub fn new(name: &str, args: Value, payload: impl Serialize, text: String) -> Self {
        Report {
            echo: Echo { name: name.to_string(), args },
            payload: serde_json::to_value(payload).expect("payload serializes"),
            text,
            code: 0,
        }
    }

    pub fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    pub fn into_record(self, timing: Option<Timing>) -> OutputRecord {
        OutputRecord { schema_version: SCHEMA_VERSION.to_string(), command: self.echo, payload: self.payload, timing }
    }
}
