//! The report envelope shared by every command, in JSON or as a table.

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{CliError, Result, EXIT_HYPOTHESIS, EXIT_MISMATCH, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    HypothesisViolated,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => EXIT_OK,
            Status::HypothesisViolated => EXIT_HYPOTHESIS,
            Status::Mismatch => EXIT_MISMATCH,
        }
    }

    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub assumption: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Report<'a, I: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub status: Status,
    pub formulas: &'static [&'static str],
    pub input: &'a I,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
    pub result: Option<R>,
}

/// Plain-text rendering of a result.
pub trait Table {
    fn table(&self) -> String;
}

/// Exit code and the rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
}

/// Wrap a command result in the envelope. Hypothesis violations become a
/// report with exit code 2; other errors pass through.
pub fn finish<I: Serialize, R: Serialize + Table>(
    command: &str,
    seed: u64,
    format: Format,
    formulas: &'static [&'static str],
    input: &I,
    result: Result<(Status, R)>,
) -> Result<Outcome> {
    let (status, violation, result) = match result {
        Ok((s, r)) => (s, None, Some(r)),
        Err(CliError::Hypothesis { assumption, detail }) => (
            Status::HypothesisViolated,
            Some(Violation { assumption, detail }),
            None,
        ),
        Err(e) => return Err(e),
    };
    let report = Report {
        tool: "eqrr",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed,
        status,
        formulas,
        input,
        violation,
        result,
    };
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Table => render_table(&report),
    };
    Ok(Outcome {
        code: status.exit_code(),
        text,
    })
}

fn render_table<I: Serialize, R: Serialize + Table>(r: &Report<'_, I, R>) -> String {
    let status = serde_json::to_value(r.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let mut out = format!(
        "eqrr {} {}  seed {}  status {}\n",
        r.version, r.command, r.seed, status
    );
    for f in r.formulas {
        out.push_str(&format!("  formula: {f}\n"));
    }
    if let Some(v) = &r.violation {
        out.push_str(&format!(
            "violated assumption: {}\n  {}\n",
            v.assumption, v.detail
        ));
    }
    if let Some(res) = &r.result {
        out.push_str(&res.table());
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let s: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", s.join("  ").trim_end())
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}
