//! Model files.
//!
//! ```text
//! # comments run to end of line
//! 1 2 3 5          # d q a b
//! phi: 1
//! ```
//!
//! or, for a pair supplied as matrices,
//!
//! ```text
//! 1 2 3 5
//! A:
//! 2 2
//! 37/6 0
//! 1 13/6
//! Astar:
//! 2 2
//! 101/10 1
//! 0 29/10
//! ```
//!
//! A header without either section stands for the first split sequence
//! found by [`solve_phi`].

use std::fs;
use std::path::Path;

use crate::error::{Error, ParseError, Result};
use crate::linalg::{parse_matrix_lines, Matrix};
use crate::model::{build_model, solve_phi, TDModel};
use crate::scalars::{ParamSet, Scalar, SpectralParams};

/// Parsed contents of a model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSource {
    Spectral(SpectralParams),
    Params(ParamSet),
    Matrices {
        params: SpectralParams,
        a: Matrix,
        astar: Matrix,
    },
}

impl ModelSource {
    pub fn spectral(&self) -> &SpectralParams {
        match self {
            ModelSource::Spectral(s) => s,
            ModelSource::Params(p) => p.spectral(),
            ModelSource::Matrices { params, .. } => params,
        }
    }

    /// Builds the model. Split-form sources go through [`build_model`] and so
    /// must satisfy the defining relations; matrix sources are only checked
    /// for having the right spectra.
    pub fn into_model(self) -> Result<TDModel> {
        match self {
            ModelSource::Spectral(s) => {
                let phi = solve_phi(s.d(), s.q(), s.a(), s.b())?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Unsupported("no rational split sequence found".into()))?;
                build_model(&ParamSet::from_spectral(s, phi)?)
            }
            ModelSource::Params(p) => build_model(&p),
            ModelSource::Matrices { params, a, astar } => TDModel::from_matrices(params, a, astar, None),
        }
    }
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn scalar_at(tok: &str, line: usize) -> Result<Scalar> {
    tok.parse()
        .map_err(|e: ParseError| ParseError::at(line, e.to_string()).into())
}

pub fn parse_model(text: &str) -> Result<ModelSource> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let mut rest = lines.as_slice();
    let skip_blank = |rest: &mut &[(usize, &str)]| {
        while let Some(((_, l), tail)) = rest.split_first() {
            if !content(l).is_empty() {
                break;
            }
            *rest = tail;
        }
    };
    skip_blank(&mut rest);
    let Some(((hline, header), tail)) = rest.split_first() else {
        return Err(ParseError::at(lines.len().max(1), "missing \"d q a b\" header").into());
    };
    rest = tail;
    let toks: Vec<&str> = content(header).split_whitespace().collect();
    let [d, q, a, b] = toks.as_slice() else {
        return Err(ParseError::at(*hline, format!("expected \"d q a b\", found {} tokens", toks.len())).into());
    };
    let d: usize = d
        .parse()
        .map_err(|_| ParseError::at(*hline, format!("bad diameter {d:?}")))?;
    let spectral = SpectralParams::new(d, scalar_at(q, *hline)?, scalar_at(a, *hline)?, scalar_at(b, *hline)?)?;
    skip_blank(&mut rest);
    let Some(((line, first), tail)) = rest.split_first() else {
        return Ok(ModelSource::Spectral(spectral));
    };
    let first = content(first);
    let source = if let Some(phis) = first.strip_prefix("phi:") {
        rest = tail;
        let phi = phis
            .split_whitespace()
            .map(|t| scalar_at(t, *line))
            .collect::<Result<Vec<_>>>()?;
        if phi.len() != d {
            return Err(ParseError::at(*line, format!("expected {d} phi values, found {}", phi.len())).into());
        }
        ModelSource::Params(ParamSet::from_spectral(spectral, phi)?)
    } else if first == "A:" {
        let a = read_block(tail, *line, d)?;
        rest = a.1;
        skip_blank(&mut rest);
        let Some(((sline, label), tail)) = rest.split_first() else {
            return Err(ParseError::at(lines.len(), "missing \"Astar:\" block").into());
        };
        if content(label) != "Astar:" {
            return Err(ParseError::at(*sline, "expected \"Astar:\"").into());
        }
        let astar = read_block(tail, *sline, d)?;
        rest = astar.1;
        ModelSource::Matrices {
            params: spectral,
            a: a.0,
            astar: astar.0,
        }
    } else {
        return Err(ParseError::at(*line, "expected \"phi:\" or \"A:\"").into());
    };
    skip_blank(&mut rest);
    if let Some((line, _)) = rest.first() {
        return Err(ParseError::at(*line, "unexpected content after model").into());
    }
    Ok(source)
}

fn read_block<'a>(
    lines: &'a [(usize, &'a str)],
    label_line: usize,
    d: usize,
) -> Result<(Matrix, &'a [(usize, &'a str)])> {
    let (m, rest) = parse_matrix_lines(lines)?;
    let n = d + 1;
    if m.shape() != (n, n) {
        return Err(ParseError::at(
            label_line,
            format!("matrix is {}x{} but d = {d} needs {n}x{n}", m.rows(), m.cols()),
        )
        .into());
    }
    Ok((m, rest))
}

/// Text form of `model`: the split sequence when the model was built from
/// one, otherwise both matrices.
pub fn export_model(model: &TDModel) -> String {
    let p = model.params();
    let mut s = format!("{} {} {} {}\n", p.d(), p.q(), p.a(), p.b());
    match model.phi() {
        Some(phi) => {
            let toks: Vec<String> = phi.iter().map(Scalar::to_string).collect();
            s.push_str(&format!("phi: {}\n", toks.join(" ")));
        }
        None => {
            s.push_str("A:\n");
            s.push_str(&model.a().to_text());
            s.push_str("Astar:\n");
            s.push_str(&model.astar().to_text());
        }
    }
    s
}

pub fn import_model(path: impl AsRef<Path>) -> Result<TDModel> {
    let text = fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Unsupported(format!("{}: {e}", path.as_ref().display())))?;
    parse_model(&text)?.into_model()
}

pub fn write_model(model: &TDModel, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path.as_ref(), export_model(model))
        .map_err(|e| Error::Unsupported(format!("{}: {e}", path.as_ref().display())))
}
