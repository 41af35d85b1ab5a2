//! Rep file input, and the text / JSON / file output shared by every subcommand.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use liecoh::lie::{LieRep, RepFile};
use liecoh::suites::Report;
use liecoh::Error;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_) | Error::Config(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

/// Reads and validates a rep file; diagnostics carry the JSON path of the bad field.
pub fn read_rep(path: &Path) -> Result<LieRep, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let file: RepFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        Failure::usage(format!("{}: field {at}: {}", path.display(), e.inner()))
    })?;
    file.to_rep().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Envelope<'a> {
    #[serde(flatten)]
    report: &'a Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a Value>,
}

pub struct Output {
    report: Option<Report>,
    text: String,
    result: Option<Value>,
}

impl Output {
    pub fn new(report: Report, text: String) -> Self {
        Output { report: Some(report), text, result: None }
    }

    /// A bare rep file: always JSON, always exit 0.
    pub fn rep_file(f: RepFile) -> Self {
        let text = serde_json::to_string_pretty(&f).expect("serializable") + "\n";
        Output { report: None, text, result: None }
    }

    pub fn with_result<T: Serialize>(mut self, r: &T) -> Self {
        self.result = Some(serde_json::to_value(r).expect("serializable"));
        self
    }

    pub fn emit(self, json: bool, out: Option<&Path>) -> Result<u8, Failure> {
        let body = match (&self.report, json) {
            (Some(report), true) => {
                let env = Envelope { report, result: self.result.as_ref() };
                serde_json::to_string_pretty(&env).expect("serializable") + "\n"
            }
            _ => self.text,
        };
        match out {
            Some(p) => fs::write(p, body).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes()).map_err(|e| Failure { code: 1, message: e.to_string() })?;
            }
        }
        Ok(self.report.map_or(0, |r| u8::try_from(r.exit_code()).unwrap_or(1)))
    }
}

pub fn summary(r: &Report) -> String {
    let mut s = String::new();
    for c in r.failures() {
        s.push_str(&format!("FAIL {}: expected {}, computed {}\n", c.name, c.expected, c.computed));
    }
    let passed = r.checks.iter().filter(|c| c.pass).count();
    s.push_str(&format!("{} {passed}/{} checks passed\n", if r.pass { "PASS" } else { "FAIL" }, r.checks.len()));
    s
}
