//! Report documents written by the verifier.

use serde::{Deserialize, Serialize};

use super::quadruple::{check_all, Check, ExponentQuadruple};
use super::run::REPORT_SCHEMA;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleReport {
    pub schema: String,
    pub quadruple: ExponentQuadruple,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub fn verify_quadruple(q: &ExponentQuadruple) -> QuadrupleReport {
    let checks = check_all(q);
    let pass = checks.iter().all(|c| c.pass);
    QuadrupleReport { schema: REPORT_SCHEMA.into(), quadruple: q.clone(), checks, pass }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
