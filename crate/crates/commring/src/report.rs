use std::fmt;

use commring_core::Certificate;

use crate::request::Request;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        }
    }
}

/// Marks the end of the request header.
pub const SEPARATOR: &str = "---";

/// Request echo, result lines, and the checks that were re-run. The
/// outcome is `pass` only if every check passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub request: Request,
    pub result: Vec<String>,
    pub checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(request: &Request) -> Report {
        Report {
            request: request.clone(),
            result: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn line(&mut self, key: &str, value: impl fmt::Display) {
        self.result.push(format!("{key}: {value}"));
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    /// Appends the certificate text and records its verdict as a check.
    pub fn certificate(&mut self, cert: &Certificate) {
        self.result.extend(cert.to_string().lines().map(String::from));
        self.check(&format!("certificate {}", cert.claim), cert.passed());
    }

    pub fn outcome(&self) -> Outcome {
        if !self.checks.is_empty() && self.checks.iter().all(|c| c.1) {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.request.echo() {
            writeln!(f, "{line}")?;
        }
        writeln!(f, "{SEPARATOR}")?;
        for line in &self.result {
            writeln!(f, "{line}")?;
        }
        writeln!(f, "{SEPARATOR}")?;
        for (name, ok) in &self.checks {
            writeln!(f, "check {name}: {}", if *ok { "pass" } else { "fail" })?;
        }
        writeln!(f, "status: {}", self.outcome().as_str())
    }
}
