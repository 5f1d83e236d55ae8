//! Text format for colorings.
//!
//! ```text
//! gallai-coloring v1
//! order N colors k
//! c(0,1) c(0,2) … c(0,N-1)
//! c(1,2) … c(1,N-1)
//! …
//! c(N-2,N-1)
//! ```
//!
//! Exactly `N − 1` edge lines follow the header; line `i` lists the colors of
//! edges `(i, j)` for `j = i+1..N`, 1-based, space-separated.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{ColoredComplete, ColoringError};

pub const MAGIC: &str = "gallai-coloring v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line 1: expected `{MAGIC}`")]
    BadMagic,
    #[error("line 2: expected `order N colors k`")]
    BadHeader,
    #[error("expected {expected} edge lines, found {found}")]
    LineCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} colors, found {found}")]
    RowLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: `{token}` is not a color in 1..={num_colors}")]
    BadColor { line: usize, token: String, num_colors: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

pub fn emit(g: &ColoredComplete) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n + 64);
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "order {n} colors {}", g.num_colors());
    for i in 0..n.saturating_sub(1) {
        for j in i + 1..n {
            if j > i + 1 {
                out.push(' ');
            }
            let _ = write!(out, "{}", g.color(i, j));
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<ColoredComplete, FormatError> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(MAGIC) {
        return Err(FormatError::BadMagic);
    }
    let header: Vec<&str> = lines.next().ok_or(FormatError::BadHeader)?.split_whitespace().collect();
    let (order, num_colors) = match header.as_slice() {
        ["order", n, "colors", k] => (
            n.parse::<usize>().map_err(|_| FormatError::BadHeader)?,
            k.parse::<usize>().map_err(|_| FormatError::BadHeader)?,
        ),
        _ => return Err(FormatError::BadHeader),
    };
    if order == 0 {
        return Err(ColoringError::EmptyGraph.into());
    }
    if num_colors == 0 || num_colors > u8::MAX as usize {
        return Err(ColoringError::BadColorCount(num_colors).into());
    }
    let rows: Vec<&str> = lines.collect();
    // tolerate trailing blank lines only
    let used = rows.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |p| p + 1);
    if used != order - 1 {
        return Err(FormatError::LineCount {
            expected: order - 1,
            found: used,
        });
    }
    let mut colors = Vec::with_capacity(order * (order - 1) / 2);
    for (i, row) in rows[..used].iter().enumerate() {
        let line = i + 3;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != order - 1 - i {
            return Err(FormatError::RowLength {
                line,
                expected: order - 1 - i,
                found: tokens.len(),
            });
        }
        for tok in tokens {
            match tok.parse::<u8>() {
                Ok(c) if c >= 1 && c as usize <= num_colors => colors.push(c),
                _ => {
                    return Err(FormatError::BadColor {
                        line,
                        token: tok.to_string(),
                        num_colors,
                    })
                }
            }
        }
    }
    Ok(ColoredComplete::from_rows(order, num_colors, &colors)?)
}
