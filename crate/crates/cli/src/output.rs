//! Rendering and error plumbing.

use std::fs;
use std::path::Path;

use carries_core::rational::{render, render_decimal};
use carries_core::{Error, Rational};
use serde_json::{json, Value};

use crate::Format;

/// Version of the JSON layout.
pub const SCHEMA: u32 = 1;

pub struct Context {
    pub format: Format,
    pub float: bool,
    pub digits: u32,
    pub seed: u64,
}

impl Context {
    pub fn q(&self, x: &Rational) -> String {
        if self.float {
            render_decimal(x, self.digits)
        } else {
            render(x)
        }
    }

    pub fn qs(&self, xs: &[Rational]) -> Vec<String> {
        xs.iter().map(|x| self.q(x)).collect()
    }

    /// Builds only the representation the format asks for.
    pub fn doc(&self, json: impl FnOnce() -> Value, csv: impl FnOnce() -> Vec<Vec<String>>) -> Doc {
        match self.format {
            Format::Json => {
                let mut v = json();
                if let Value::Object(map) = &mut v {
                    map.insert("schema".to_owned(), json!(SCHEMA));
                }
                Doc::Json(v)
            }
            Format::Csv => Doc::Csv(csv()),
        }
    }
}

pub enum Doc {
    Json(Value),
    Csv(Vec<Vec<String>>),
    Text(String),
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Self::failed(e.to_string()),
            _ => Self::invalid(e.to_string()),
        }
    }
}

fn render_doc(doc: &Doc) -> Result<String, CliError> {
    match doc {
        Doc::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::failed(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Doc::Csv(rows) => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for row in rows {
                w.write_record(row).map_err(|e| CliError::failed(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::failed(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::failed(e.to_string()))
        }
        Doc::Text(s) => Ok(format!("{s}\n")),
    }
}

pub fn write(doc: &Doc, out: Option<&Path>) -> Result<(), CliError> {
    let text = render_doc(doc)?;
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
