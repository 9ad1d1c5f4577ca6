use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cli::RunConfig;
use crate::error::{Error, Result};

pub const SCHEMA: &str = "fincat-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Clone, Serialize)]
pub struct InputFile {
    pub path: PathBuf,
    pub sha256: String,
}

/// Every file read by a command, in reading order, with a digest over all of
/// them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Inputs {
    pub files: Vec<InputFile>,
    pub sha256: String,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
        self.files.push(InputFile {
            path: path.to_path_buf(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        Ok(text)
    }

    pub fn finish(&mut self) {
        let mut h = Sha256::new();
        for f in &self.files {
            h.update(f.sha256.as_bytes());
        }
        self.sha256 = hex::encode(h.finalize());
    }
}

/// A witness or counterexample in one of the text formats, so that it can be
/// saved and fed back to the tool.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub label: String,
    /// `fincat`, `fun`, `psh`, `poset` or `inst`.
    pub format: &'static str,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<ViolationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationReport {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorReport {
    pub fn new(e: &Error) -> ErrorReport {
        let violations = match e {
            Error::InvalidCategory(vs) => vs
                .iter()
                .map(|v| ViolationReport {
                    kind: v.kind(),
                    message: v.to_string(),
                })
                .collect(),
            _ => Vec::new(),
        };
        ErrorReport {
            kind: e.kind(),
            message: e.to_string(),
            violations,
        }
    }
}

/// The JSON document emitted by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: RunConfig,
    pub inputs: Inputs,
    pub holds: bool,
    pub verdict: serde_json::Value,
    pub witnesses: Vec<Witness>,
    /// Degeneracies that qualify the verdict. Always present.
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    /// Human-readable lines for the plain-text output.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: RunConfig, inputs: Inputs) -> Report {
        Report {
            schema: SCHEMA,
            tool: TOOL,
            command,
            inputs,
            holds: true,
            verdict: serde_json::Value::Null,
            witnesses: Vec::new(),
            notes: Vec::new(),
            error: None,
            timing: None,
            summary: Vec::new(),
        }
    }

    pub fn note(&mut self, note: &str) {
        if !self.notes.iter().any(|n| n == note) {
            self.notes.push(note.to_string());
        }
    }

    pub fn witness(&mut self, label: impl Into<String>, format: &'static str, text: String) {
        self.witnesses.push(Witness {
            label: label.into(),
            format,
            text,
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
        s.push('\n');
        s
    }
}
