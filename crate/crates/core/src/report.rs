//! Structured pass/fail results.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one verified statement on one frame. A failing verdict always
/// carries a counterexample with enough data to replay the check by hand;
/// witnesses record the constructive side of a passing one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub frame: String,
    pub property: String,
    pub verdict: bool,
    pub witnesses: Vec<Value>,
    pub counterexample: Option<Value>,
}

impl PropertyReport {
    pub fn pass(frame: &str, property: &str) -> Self {
        PropertyReport {
            frame: frame.to_owned(),
            property: property.to_owned(),
            verdict: true,
            witnesses: Vec::new(),
            counterexample: None,
        }
    }

    pub fn pass_with(frame: &str, property: &str, witnesses: Vec<Value>) -> Self {
        PropertyReport {
            witnesses,
            ..Self::pass(frame, property)
        }
    }

    pub fn fail(frame: &str, property: &str, counterexample: Value) -> Self {
        PropertyReport {
            frame: frame.to_owned(),
            property: property.to_owned(),
            verdict: false,
            witnesses: Vec::new(),
            counterexample: Some(counterexample),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict
    }

    /// Stable ordering key for report files.
    pub fn sort_key(&self) -> (String, String) {
        (self.frame.clone(), self.property.clone())
    }
}
