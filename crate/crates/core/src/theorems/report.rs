use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    DegenerateBranch,
    NotApplicable,
    Violated,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::DegenerateBranch => "degenerate-branch",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Violated => "violated",
        }
    }
}

/// One verified instance. Serializes with the fixed field names
/// `theorem, ambient, inputs, dims, bound, verdict, certificate`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub ambient: String,
    pub inputs: Vec<String>,
    pub dims: BTreeMap<String, i64>,
    pub bound: Option<i64>,
    pub verdict: Verdict,
    pub certificate: serde_json::Value,
}

impl TheoremReport {
    pub fn new(theorem: &str, ambient: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            ambient: ambient.to_string(),
            inputs: Vec::new(),
            dims: BTreeMap::new(),
            bound: None,
            verdict: Verdict::Holds,
            certificate: serde_json::Value::Null,
        }
    }

    pub(crate) fn for_spaces(theorem: &str, spaces: &[&Subspace]) -> Self {
        let ambient = spaces.first().map(|s| s.ambient().descriptor()).unwrap_or_default();
        let mut r = Self::new(theorem, &ambient);
        r.inputs = spaces.iter().map(|s| s.to_compact()).collect();
        r
    }

    pub fn dim(mut self, key: &str, value: usize) -> Self {
        self.dims.insert(key.to_string(), value as i64);
        self
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn with_certificate(mut self, certificate: serde_json::Value) -> Self {
        self.certificate = certificate;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
