use std::fmt::{Debug, Write};

use gyrokit::{Check, CheckReport, GyroError};
use serde::Serialize;
use serde_json::{json, Value};

/// What a verb produced: a verdict, a human report and its JSON form.
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn new(passed: bool, text: String, json: Value) -> Self {
        Outcome { passed, text, json }
    }
}

pub fn check_line<E: Debug>(c: &Check<E>) -> String {
    let verdict = if c.passed { "PASS" } else { "FAIL" };
    let mut line = format!("  {verdict}  {:<44} {:>9} checked", c.name, c.checked);
    if let Some(w) = &c.witness {
        let _ = write!(line, "\n        witness {:?}: {}", w.elements, w.detail);
    }
    line
}

pub fn checks_text<'a, E: Debug + 'a>(checks: impl IntoIterator<Item = &'a Check<E>>) -> String {
    checks
        .into_iter()
        .map(check_line)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn report_text<E: Debug>(title: &str, r: &CheckReport<E>) -> String {
    format!("{title}: {}\n{}", r.structure, checks_text(&r.checks))
}

pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn table_text(rows: &[Vec<usize>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .max()
        .map_or(1, |m| m.to_string().len());
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Malformed input exits 2; a failed precondition or check exits 1.
pub fn exit_code(e: &GyroError) -> u8 {
    match e {
        GyroError::Parse(_)
        | GyroError::MalformedTable(_)
        | GyroError::Io(_)
        | GyroError::Json(_)
        | GyroError::UnknownBuiltin(_)
        | GyroError::OutOfRange { .. }
        | GyroError::OutsideCarrier(_)
        | GyroError::DomainMismatch(_) => 2,
        _ => 1,
    }
}

pub fn error_json(e: &GyroError) -> Value {
    json!({ "passed": false, "error": e.to_string(), "exit": exit_code(e) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&GyroError::Parse("x".into())), 2);
        assert_eq!(exit_code(&GyroError::UnknownBuiltin("G".into())), 2);
        assert_eq!(exit_code(&GyroError::Precondition("x".into())), 1);
    }

    #[test]
    fn aligned_tables() {
        assert_eq!(table_text(&[vec![0, 10], vec![10, 0]]), " 0 10\n10  0");
    }
}
