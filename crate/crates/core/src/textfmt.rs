//! Shared tokenizer for the line-oriented text formats.

use crate::error::{Error, Result};

/// Non-empty lines with `#` comments stripped, as `(1-based line number, tokens)`.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn expect_len(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(Error::parse(
            line,
            format!("'{}' expects {} fields, found {}", tokens[0], n - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

pub(crate) fn usize_field(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("bad {what} '{tok}'")))
}

/// 1-based index in `1..=n`, returned 0-based.
pub(crate) fn input_index(line: usize, tok: &str, n: usize, what: &str) -> Result<usize> {
    let v = usize_field(line, tok, what)?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("{what} {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

/// 0-based index in `0..n`.
pub(crate) fn output_index(line: usize, tok: &str, n: usize, what: &str) -> Result<usize> {
    let v = usize_field(line, tok, what)?;
    if v >= n {
        return Err(Error::parse(line, format!("{what} {v} out of range 0..{n}")));
    }
    Ok(v)
}

pub(crate) fn f64_field(line: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| Error::parse(line, format!("bad number '{tok}'")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number '{tok}'")));
    }
    Ok(v)
}

pub(crate) fn name_field(line: usize, tok: &str) -> Result<String> {
    if tok.is_empty() {
        return Err(Error::parse(line, "empty name"));
    }
    Ok(tok.to_string())
}
