//! Machine-readable results of the built-in verification checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one check run: which claim, with which parameters, and
/// either a pass with summary statistics or a fail with a concrete
/// witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub params: BTreeMap<String, i64>,
    pub verdict: Verdict,
    pub witness: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl CheckReport {
    pub fn pass(
        theorem: &str,
        params: impl IntoIterator<Item = (&'static str, i64)>,
        summary: Value,
    ) -> Self {
        CheckReport {
            theorem: theorem.to_string(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            verdict: Verdict::Pass,
            witness: summary,
        }
    }

    /// A failure must point at something concrete.
    pub fn fail(
        theorem: &str,
        params: impl IntoIterator<Item = (&'static str, i64)>,
        witness: Value,
    ) -> Self {
        assert!(
            !witness.is_null(),
            "a failing report needs a concrete witness"
        );
        CheckReport {
            theorem: theorem.to_string(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            verdict: Verdict::Fail,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
