use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const INFEASIBLE: u8 = 2;
pub const INVALID: u8 = 3;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// The JSON document a subcommand prints on stdout.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring_digest: Option<String>,
    pub verdict: &'static str,
    #[serde(flatten)]
    pub body: Map<String, Value>,
}

impl RunReport {
    pub fn new(command: &'static str, input_digest: String, verdict: &'static str) -> Self {
        RunReport { command, input_digest, coloring_digest: None, verdict, body: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.body.insert(key.to_string(), serde_json::to_value(value).expect("serialisable"));
        self
    }

    pub fn emit(&self) {
        // a closed pipe (`| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(self).expect("serialisable"));
    }
}

/// Invalid input: a message for stderr and, once the input has been read, a
/// report for stdout.
#[derive(Debug)]
pub struct Failure {
    pub report: Option<Box<RunReport>>,
    pub message: String,
}

impl Failure {
    pub fn bare(message: impl Into<String>) -> Self {
        Failure { report: None, message: message.into() }
    }

    pub fn invalid(command: &'static str, digest: &str, message: impl Into<String>) -> Self {
        let message = message.into();
        let report = RunReport::new(command, digest.to_string(), "invalid").with("error", json!({ "message": message }));
        Failure { report: Some(Box::new(report)), message }
    }

    /// A parse error with its position, prefixed by the file name on stderr.
    pub fn parse(command: &'static str, digest: &str, path: &Path, err: &tricolor::plane::pg1::ParseError) -> Self {
        let report = RunReport::new(command, digest.to_string(), "invalid").with(
            "error",
            json!({ "file": path.display().to_string(), "line": err.line, "column": err.column, "message": err.message }),
        );
        Failure { report: Some(Box::new(report)), message: format!("{}:{err}", path.display()) }
    }
}

/// Prints the elapsed time of a labelled phase to stderr.
pub struct Timer {
    label: &'static str,
    start: Instant,
}

impl Timer {
    pub fn start(label: &'static str) -> Self {
        Timer { label, start: Instant::now() }
    }

    pub fn stop(self) {
        eprintln!("{}: {:.3} s", self.label, self.start.elapsed().as_secs_f64());
    }
}
