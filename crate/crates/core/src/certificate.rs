//! Replayable verdict records.
//!
//! A certificate names a claim, the parameters needed to re-derive it and the
//! evidence collected while checking it. The text form is canonical: field
//! order is insertion order and every value is a single line, so re-running
//! the same claim reproduces the same bytes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: String,
    pub parameters: Vec<(String, String)>,
    pub evidence: Vec<(String, String)>,
    pub verdict: Verdict,
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

impl Certificate {
    pub fn new(claim: &str) -> Certificate {
        Certificate {
            claim: claim.to_string(),
            parameters: Vec::new(),
            evidence: Vec::new(),
            verdict: Verdict::Fail,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Certificate {
        self.parameters
            .push((key.to_string(), one_line(&value.to_string())));
        self
    }

    pub fn push_evidence(&mut self, key: &str, value: impl fmt::Display) {
        self.evidence
            .push((key.to_string(), one_line(&value.to_string())));
    }

    pub fn with_evidence(mut self, key: &str, value: impl fmt::Display) -> Certificate {
        self.push_evidence(key, value);
        self
    }

    pub fn decide(mut self, ok: bool) -> Certificate {
        self.verdict = Verdict::from_bool(ok);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.parameters
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn evidence_value(&self, key: &str) -> Option<&str> {
        self.evidence
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: {}", self.claim)?;
        for (k, v) in &self.parameters {
            writeln!(f, "param {k}: {v}")?;
        }
        for (k, v) in &self.evidence {
            writeln!(f, "evidence {k}: {v}")?;
        }
        writeln!(f, "verdict: {}", self.verdict.as_str())
    }
}
