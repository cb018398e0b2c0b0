use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Counterexample or other evidence, present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
}

/// The machine-readable outcome of one command. Everything except `runtime`
/// is a function of the inputs and configuration.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub data: BTreeMap<String, Value>,
    /// Wall-clock timings and cache activity.
    pub runtime: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: Verdict::Pass,
            checks: Vec::new(),
            error: None,
            data: BTreeMap::new(),
            runtime: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.check_with(name, ok, None);
    }

    pub fn check_with(&mut self, name: impl Into<String>, ok: bool, detail: Option<Value>) {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(Check { name: name.into(), verdict, detail: if ok { None } else { detail } });
    }

    /// Records a check whose failure arrives as an error: axiom and diagram
    /// failures become FAIL verdicts, anything else is returned.
    pub fn check_result<T>(&mut self, name: impl Into<String>, r: Result<T, CliError>) -> Result<Option<T>, CliError> {
        match r {
            Ok(t) => {
                self.check(name, true);
                Ok(Some(t))
            }
            Err(CliError::Check { what, detail, indices }) => {
                let d = serde_json::json!({ "failure": what, "detail": detail, "indices": indices });
                self.check_with(name, false, Some(d));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).expect("serializable report data"));
    }

    pub fn fail_with(&mut self, e: &CliError) {
        self.verdict = Verdict::Fail;
        self.error = Some(ErrorInfo { kind: e.kind(), message: e.to_string() });
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report") + "\n"
    }

    /// One line per check, for stderr.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            };
            match &c.detail {
                Some(d) => out.push_str(&format!("{tag} {}: {d}\n", c.name)),
                None => out.push_str(&format!("{tag} {}\n", c.name)),
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("ERROR {}: {}\n", e.kind, e.message));
        }
        out.push_str(&format!(
            "{}: {}\n",
            self.command,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}
