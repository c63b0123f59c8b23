//! Batch configuration files.
//!
//! ```toml
//! suites = ["all"]
//! output = "report.jsonl"   # stdout when absent
//! parallel = true
//!
//! [[target]]
//! d = 1
//! q = "2"
//! a = 3
//! b = 5
//! phi = ["1"]               # optional; solved for when absent
//!
//! [[target]]
//! name = "imported"
//! model = "pair.model"      # relative to the config file
//! ```

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use onsager_core::io::{parse_model, ModelSource};
use onsager_core::verify::Suite;
use onsager_core::Scalar;
use serde::Deserialize;
use toml::Spanned;

use crate::CliError;

/// Scalars may be written as TOML integers or as `"p/q"` strings.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ScalarField {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    name: Option<String>,
    d: Option<Spanned<i64>>,
    q: Option<Spanned<ScalarField>>,
    a: Option<Spanned<ScalarField>>,
    b: Option<Spanned<ScalarField>>,
    phi: Option<Spanned<Vec<ScalarField>>>,
    model: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default, rename = "target")]
    targets: Vec<Spanned<RawTarget>>,
    suites: Option<Spanned<Vec<String>>>,
    output: Option<PathBuf>,
    #[serde(default)]
    parallel: bool,
}

/// What a target asks to be built. Parameters are kept unvalidated so a bad
/// set shows up as a failure entry in the report rather than aborting the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpec {
    Params {
        d: usize,
        q: Scalar,
        a: Scalar,
        b: Scalar,
        phi: Option<Vec<Scalar>>,
    },
    File(ModelSource),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub label: String,
    pub spec: TargetSpec,
}

impl Target {
    pub fn params(d: usize, q: Scalar, a: Scalar, b: Scalar, phi: Option<Vec<Scalar>>) -> Self {
        let mut label = format!("d={d} q={q} a={a} b={b}");
        if let Some(phi) = &phi {
            let toks: Vec<String> = phi.iter().map(Scalar::to_string).collect();
            label.push_str(&format!(" phi={}", toks.join(",")));
        }
        Target {
            label,
            spec: TargetSpec::Params { d, q, a, b, phi },
        }
    }

    /// Reads and parses a model file.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let source = parse_model(&text).map_err(|source| CliError::Model {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Target {
            label: path.display().to_string(),
            spec: TargetSpec::File(source),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub targets: Vec<Target>,
    pub suites: Vec<Suite>,
    pub output: Option<PathBuf>,
    pub parallel: bool,
}

impl SuiteConfig {
    pub fn new(targets: Vec<Target>, suites: Vec<Suite>) -> Result<Self, CliError> {
        if targets.is_empty() {
            return Err(CliError::Usage("no targets given".into()));
        }
        if suites.is_empty() {
            return Err(CliError::Usage("no suites given".into()));
        }
        Ok(SuiteConfig {
            targets,
            suites,
            output: None,
            parallel: false,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, path, base)
    }

    /// Parses config text. `origin` names the file in diagnostics; model and
    /// output paths are resolved against `base`.
    pub fn parse(text: &str, origin: &Path, base: &Path) -> Result<Self, CliError> {
        let err = |span: Range<usize>, msg: String| CliError::Config {
            path: origin.to_path_buf(),
            line: line_of(text, span.start),
            msg,
        };
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| err(e.span().unwrap_or(0..0), e.message().to_string()))?;

        let suites = match &raw.suites {
            None => Suite::ALL.to_vec(),
            Some(s) => {
                let list = Suite::parse_list(s.get_ref()).map_err(|m| err(s.span(), m))?;
                if list.is_empty() {
                    return Err(err(s.span(), "suite list is empty".into()));
                }
                list
            }
        };
        if raw.targets.is_empty() {
            return Err(err(0..0, "no [[target]] entries".into()));
        }

        let mut targets = Vec::with_capacity(raw.targets.len());
        for t in &raw.targets {
            let span = t.span();
            let t = t.get_ref();
            let mut target = match (&t.model, &t.d) {
                (Some(model), None) => {
                    if t.q.is_some() || t.a.is_some() || t.b.is_some() || t.phi.is_some() {
                        return Err(err(
                            span,
                            "a target gives either a model file or parameters, not both".into(),
                        ));
                    }
                    let mut target = Target::from_file(&base.join(model.get_ref()))?;
                    target.label = model.get_ref().clone();
                    target
                }
                (None, Some(d)) => {
                    let scalar = |f: &Option<Spanned<ScalarField>>, name: &str| {
                        let f = f
                            .as_ref()
                            .ok_or_else(|| err(span.clone(), format!("target is missing {name}")))?;
                        to_scalar(f.get_ref()).map_err(|m| err(f.span(), m))
                    };
                    let (q, a, b) = (scalar(&t.q, "q")?, scalar(&t.a, "a")?, scalar(&t.b, "b")?);
                    let dv =
                        usize::try_from(*d.get_ref()).map_err(|_| err(d.span(), "d must be nonnegative".into()))?;
                    let phi = match &t.phi {
                        None => None,
                        Some(p) => Some(
                            p.get_ref()
                                .iter()
                                .map(to_scalar)
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|m| err(p.span(), m))?,
                        ),
                    };
                    Target::params(dv, q, a, b, phi)
                }
                (Some(_), Some(_)) => {
                    return Err(err(
                        span,
                        "a target gives either a model file or parameters, not both".into(),
                    ))
                }
                (None, None) => return Err(err(span, "target needs d, q, a, b or a model path".into())),
            };
            if let Some(name) = &t.name {
                target.label = name.clone();
            }
            targets.push(target);
        }

        Ok(SuiteConfig {
            targets,
            suites,
            output: raw.output.map(|p| base.join(p)),
            parallel: raw.parallel,
        })
    }
}

fn to_scalar(f: &ScalarField) -> Result<Scalar, String> {
    match f {
        ScalarField::Int(n) => Ok(Scalar::from_int(*n)),
        ScalarField::Text(s) => s.trim().parse().map_err(|e: onsager_core::ParseError| e.to_string()),
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}
