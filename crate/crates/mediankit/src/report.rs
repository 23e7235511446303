//! The JSON envelope every CLI command prints.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Outcome class; each maps to one exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Success,
    Negative,
    Inconclusive,
    Usage,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 2,
            Status::Inconclusive => 3,
            Status::Usage => 64,
            Status::InvalidInput => 65,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    /// `fixture:NAME` or the file path as given.
    pub source: String,
    /// SHA-256 of the canonical JSON of the input.
    pub sha256: String,
}

impl InputDigest {
    pub fn of(source: impl Into<String>, canonical: &str) -> Self {
        InputDigest {
            source: source.into(),
            sha256: hex(&Sha256::digest(canonical.as_bytes())),
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Everything but `elapsed_ms` is a function of the invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    /// Operation-specific verdict: certificates carry names, words and indices.
    pub verdict: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub code: String,
    pub message: String,
}

impl AnalysisReport {
    pub fn new(command: Vec<String>) -> Self {
        AnalysisReport {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            inputs: Vec::new(),
            status: Status::Success,
            verdict: serde_json::Value::Null,
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let mut r = AnalysisReport::new(vec!["rank".into(), "--fixture".into(), "SQUARE".into()]);
        r.inputs.push(InputDigest::of("fixture:SQUARE", "{}"));
        r.verdict = serde_json::json!({"rank": 2});
        let back: AnalysisReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(
            r.inputs[0].sha256,
            "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a"
        );
    }

    #[test]
    fn exit_codes() {
        let codes: Vec<i32> = [
            Status::Success,
            Status::Negative,
            Status::Inconclusive,
            Status::Usage,
            Status::InvalidInput,
        ]
        .iter()
        .map(|s| s.exit_code())
        .collect();
        assert_eq!(codes, [0, 2, 3, 64, 65]);
    }
}
