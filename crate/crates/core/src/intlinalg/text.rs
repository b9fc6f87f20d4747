//! Plain-text matrix format: a `rows cols` header line followed by one line
//! per row of space-separated decimal integers. `Display` emits the
//! canonical form (single spaces, `\n` after every line), which parses back
//! to an identical matrix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::IntMatrix;

/// Largest `rows * cols` accepted from text.
const MAX_ENTRIES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseMatrixError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseMatrixError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseMatrixError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Whitespace-separated tokens with their 1-based byte column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let col = offset + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, tok))
    })
}

fn parse_integer(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix('-').unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

fn parse_count(tok: &str) -> Option<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

impl FromStr for IntMatrix {
    type Err = ParseMatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));

        let (hline, header) = lines
            .next()
            .ok_or_else(|| ParseMatrixError::new(1, 1, "missing `rows cols` header"))?;
        let htoks: Vec<_> = tokens(header).collect();
        if htoks.len() != 2 {
            let col = htoks.get(2).map_or(header.len() + 1, |t| t.0);
            return Err(ParseMatrixError::new(
                hline,
                col,
                format!("header must be `rows cols`, found {} fields", htoks.len()),
            ));
        }
        let rows = parse_count(htoks[0].1).ok_or_else(|| {
            ParseMatrixError::new(hline, htoks[0].0, format!("invalid row count `{}`", htoks[0].1))
        })?;
        let cols = parse_count(htoks[1].1).ok_or_else(|| {
            ParseMatrixError::new(hline, htoks[1].0, format!("invalid column count `{}`", htoks[1].1))
        })?;
        match rows.checked_mul(cols) {
            Some(n) if n <= MAX_ENTRIES => {}
            _ => {
                return Err(ParseMatrixError::new(
                    hline,
                    1,
                    format!("{rows}x{cols} exceeds the {MAX_ENTRIES}-entry limit"),
                ))
            }
        }

        let mut data = Vec::new();
        let mut last_line = hline;
        for r in 0..rows {
            let (lno, line) = lines.next().ok_or_else(|| {
                ParseMatrixError::new(last_line + 1, 1, format!("expected {rows} rows, found {r}"))
            })?;
            last_line = lno;
            let mut count = 0;
            for (col, tok) in tokens(line) {
                if count == cols {
                    return Err(ParseMatrixError::new(
                        lno,
                        col,
                        format!("row {} has more than {cols} entries", r + 1),
                    ));
                }
                let x = parse_integer(tok).ok_or_else(|| {
                    ParseMatrixError::new(lno, col, format!("invalid integer `{tok}`"))
                })?;
                data.push(x);
                count += 1;
            }
            if count != cols {
                return Err(ParseMatrixError::new(
                    lno,
                    line.len() + 1,
                    format!("row {} has {count} entries, expected {cols}", r + 1),
                ));
            }
        }
        for (lno, line) in lines {
            if let Some((col, _)) = tokens(line).next() {
                return Err(ParseMatrixError::new(lno, col, "unexpected content after last row"));
            }
        }
        Ok(IntMatrix::from_vec(rows, cols, data).expect("entry count checked while parsing"))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows(), self.cols())?;
        for r in 0..self.rows() {
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
