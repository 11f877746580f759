//! JSON persistence of construction runs.

use std::fs;
use std::path::Path;

use super::run::{ConstructionRun, RUN_SCHEMA};
use crate::error::{Error, ParseError};

/// Pretty JSON with a trailing newline; stable across runs.
pub fn run_to_json(run: &ConstructionRun) -> Result<String, Error> {
    let mut s = serde_json::to_string_pretty(run)?;
    s.push('\n');
    Ok(s)
}

pub fn run_from_json(text: &str) -> Result<ConstructionRun, Error> {
    let run: ConstructionRun = serde_json::from_str(text)?;
    if run.schema != RUN_SCHEMA {
        return Err(ParseError::Other(format!("unsupported run schema {:?}", run.schema)).into());
    }
    Ok(run)
}

pub fn write_run(path: &Path, run: &ConstructionRun) -> Result<(), Error> {
    let text = run_to_json(run)?;
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn read_run(path: &Path) -> Result<ConstructionRun, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    run_from_json(&text)
}
