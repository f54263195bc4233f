//! Flat `key = value` documents used for problem specs and result files.
//!
//! One entry per line, `#` starts a comment, list values are comma-separated.
//! Numbers are written with 17 significant digits so files round-trip
//! exactly and repeated runs are byte-identical.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// 1-based line number.
    pub line: usize,
    /// 1-based column of the first value character.
    pub column: usize,
}

impl Entry {
    /// Format error located `offset` bytes into the value.
    pub fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Format {
            line: self.line,
            column: self.column + offset,
            message: message.into(),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(0, message)
    }

    pub fn parse<T: FromStr>(&self, what: &str) -> Result<T> {
        self.value
            .parse()
            .map_err(|_| self.error(format!("{}: expected {what}, found '{}'", self.key, self.value)))
    }

    pub fn parse_list(&self) -> Result<Vec<f64>> {
        if self.value.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for item in self.value.split(',') {
            let lead = item.len() - item.trim_start().len();
            let x = item.trim().parse::<f64>().map_err(|_| {
                self.error_at(offset + lead, format!("{}: expected a number, found '{}'", self.key, item.trim()))
            })?;
            out.push(x);
            offset += item.len() + 1;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KvDocument {
    entries: Vec<Entry>,
    line_count: usize,
}

impl KvDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<Entry> = Vec::new();
        let mut seen = HashSet::new();
        let mut line_count = 0;
        for (i, raw) in text.lines().enumerate() {
            line_count = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let lead = content.len() - content.trim_start().len();
            let Some(eq) = content.find('=') else {
                return Err(Error::Format {
                    line: i + 1,
                    column: lead + 1,
                    message: "expected 'key = value'".into(),
                });
            };
            let key = content[..eq].trim();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Format {
                    line: i + 1,
                    column: lead + 1,
                    message: format!("invalid key '{key}'"),
                });
            }
            if !seen.insert(key.to_string()) {
                return Err(Error::Format {
                    line: i + 1,
                    column: lead + 1,
                    message: format!("duplicate key '{key}'"),
                });
            }
            let rest = &content[eq + 1..];
            let value_lead = rest.len() - rest.trim_start().len();
            entries.push(Entry {
                key: key.to_string(),
                value: rest.trim().to_string(),
                line: i + 1,
                column: eq + 1 + value_lead + 1,
            });
        }
        Ok(Self { entries, line_count })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    /// Missing keys are reported one line past the end of the document.
    pub fn require(&self, key: &str) -> Result<&Entry> {
        self.get(key).ok_or_else(|| Error::Format {
            line: self.line_count + 1,
            column: 1,
            message: format!("missing required key '{key}'"),
        })
    }

    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            Some(e) => Err(Error::Format {
                line: e.line,
                column: 1,
                message: format!("unknown key '{}' (expected one of {})", e.key, allowed.join(", ")),
            }),
            None => Ok(()),
        }
    }
}

/// `x` with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Builder for result documents.
#[derive(Debug, Default)]
pub struct KvWriter {
    buf: String,
}

impl KvWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn comment(&mut self, text: &str) -> &mut Self {
        let _ = writeln!(self.buf, "# {text}");
        self
    }

    pub fn text(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.buf, "{key} = {value}");
        self
    }

    pub fn number(&mut self, key: &str, x: f64) -> &mut Self {
        self.text(key, format_number(x))
    }

    pub fn numbers(&mut self, key: &str, xs: &[f64]) -> &mut Self {
        let joined: Vec<String> = xs.iter().map(|&x| format_number(x)).collect();
        self.text(key, joined.join(", "))
    }

    pub fn finish(&self) -> String {
        self.buf.clone()
    }
}
