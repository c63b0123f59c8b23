//! Matrix text format: a `"rows cols"` line followed by `rows * cols`
//! whitespace-separated scalar tokens.

use crate::error::{ParseError, Result};
use crate::linalg::Matrix;
use crate::scalars::Scalar;

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let (m, rest) = parse_matrix_lines(&lines)?;
    if let Some((line, _)) = rest.iter().find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::at(*line, "trailing content after matrix").into());
    }
    Ok(m)
}

/// Parses one matrix block from numbered lines (blank lines and `#`
/// comments skipped) and returns the unconsumed remainder.
pub fn parse_matrix_lines<'a>(lines: &'a [(usize, &'a str)]) -> Result<(Matrix, &'a [(usize, &'a str)])> {
    let mut idx = 0;
    let next_content = |idx: &mut usize| -> Option<(usize, &'a str)> {
        while *idx < lines.len() {
            let (n, l) = lines[*idx];
            *idx += 1;
            let l = strip_comment(l);
            if !l.trim().is_empty() {
                return Some((n, l));
            }
        }
        None
    };
    let last_line = lines.last().map_or(0, |(n, _)| *n);
    let (hline, header) = next_content(&mut idx).ok_or_else(|| ParseError::at(last_line, "missing matrix header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| ParseError::at(hline, format!("bad dimension {s:?}")))
    };
    let (rows, cols) = match dims.as_slice() {
        [r, c] => (parse_dim(r)?, parse_dim(c)?),
        _ => return Err(ParseError::at(hline, "expected \"rows cols\"").into()),
    };
    let need = rows * cols;
    let mut entries = Vec::with_capacity(need);
    let mut last = hline;
    while entries.len() < need {
        let (n, l) = next_content(&mut idx)
            .ok_or_else(|| ParseError::at(last, format!("expected {need} entries, found {}", entries.len())))?;
        last = n;
        for tok in l.split_whitespace() {
            let x: Scalar = tok.parse().map_err(|e| ParseError::at(n, format!("{e}")))?;
            entries.push(x);
        }
        if entries.len() > need {
            return Err(ParseError::at(n, format!("more than {need} entries")).into());
        }
    }
    Ok((Matrix::from_vec(rows, cols, entries)?, &lines[idx..]))
}

fn strip_comment(l: &str) -> &str {
    l.split('#').next().unwrap_or("")
}
