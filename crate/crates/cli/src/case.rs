//! Versioned JSON case files and schema errors with locations.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CASE_VERSION: u32 = 1;

/// `{"version": 1, "command": "...", "notes": [...], "input": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile<T> {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub input: T,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Deserialize `text`, reporting the JSON path, line and column of the first error.
pub fn parse<T: DeserializeOwned>(file: &str, text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let location = e.path().to_string();
        schema_error(file, location, e.into_inner())
    })?;
    de.end().map_err(|e| schema_error(file, ".".into(), e))?;
    Ok(value)
}

fn schema_error(file: &str, location: String, e: serde_json::Error) -> CliError {
    let full = e.to_string();
    let message = match full.rfind(" at line ") {
        Some(i) => full[..i].to_string(),
        None => full,
    };
    CliError::Schema {
        file: file.into(),
        location,
        line: e.line(),
        column: e.column(),
        message,
    }
}

/// Load a case file and check its version and command tag.
pub fn load<T: DeserializeOwned>(path: &Path, command: &str) -> Result<CaseFile<T>> {
    let name = path.display().to_string();
    let text = read(path)?;
    let header: Header = parse(&name, &text)?;
    if header.version != CASE_VERSION {
        return Err(CliError::Invalid(format!(
            "{name}: case-file version {} is not supported (expected {CASE_VERSION})",
            header.version
        )));
    }
    if let Some(c) = &header.command {
        if c != command {
            return Err(CliError::Invalid(format!(
                "{name}: case file is for `{c}`, not `{command}`"
            )));
        }
    }
    parse(&name, &text)
}

/// The envelope fields checked before the input is parsed.
#[derive(Deserialize)]
struct Header {
    version: u32,
    #[serde(default)]
    command: Option<String>,
}
