//! Shared tokenizing for the line-oriented text formats.

use crate::error::{Error, Result};

/// A non-blank, non-comment line split on whitespace.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            msg: msg.into(),
        }
    }

    pub fn usize_at(&self, idx: usize) -> Result<usize> {
        let tok = self
            .tokens
            .get(idx)
            .ok_or_else(|| self.err(format!("missing field {}", idx + 1)))?;
        parse_usize(tok, self.number)
    }
}

pub(crate) fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found `{tok}`"),
    })
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some(Line {
                number: i + 1,
                tokens: trimmed.split_whitespace().collect(),
            })
        }
    })
}

/// Parses `a b c | d e | f` into groups of ids; empty groups are kept.
pub(crate) fn parse_groups(tokens: &[&str], line: usize) -> Result<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new()];
    for tok in tokens {
        if *tok == "|" {
            groups.push(Vec::new());
        } else {
            groups.last_mut().unwrap().push(parse_usize(tok, line)?);
        }
    }
    Ok(groups)
}

pub(crate) fn join_ids(ids: &[usize]) -> String {
    let mut out = String::new();
    for (i, v) in ids.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&v.to_string());
    }
    out
}
