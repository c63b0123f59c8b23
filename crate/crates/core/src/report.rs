//! Outcome records for identity checks.

use std::fmt;

use crate::linalg::{Matrix, Subspace};
use crate::scalars::Scalar;

/// Evidence attached to a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Nonzero residual `lhs - rhs`.
    Matrix(Matrix),
    Scalar(Scalar),
    Subspace(Subspace),
    Note(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Matrix(m) => write!(f, "{m}"),
            Witness::Scalar(s) => write!(f, "{s}"),
            Witness::Subspace(s) => write!(f, "{s:?}"),
            Witness::Note(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// Stable dotted identifier, e.g. `"qdg.relation_a"`.
    pub name: String,
    /// The identity being checked, written out.
    pub identity: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Ordered list of check outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Passes iff `residual` is the zero matrix.
    pub fn zero(&mut self, name: impl Into<String>, identity: impl Into<String>, residual: Matrix) {
        let passed = residual.is_zero();
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            passed,
            witness: (!passed).then_some(Witness::Matrix(residual)),
        });
    }

    /// Passes iff `lhs == rhs`; the witness is `lhs - rhs`.
    pub fn equal(&mut self, name: impl Into<String>, identity: impl Into<String>, lhs: &Matrix, rhs: &Matrix) {
        match lhs.checked_sub(rhs) {
            Ok(res) => self.zero(name, identity, res),
            Err(e) => self.fail(name, identity, Witness::Note(e.to_string())),
        }
    }

    pub fn equal_scalar(&mut self, name: impl Into<String>, identity: impl Into<String>, lhs: &Scalar, rhs: &Scalar) {
        let passed = lhs == rhs;
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            passed,
            witness: (!passed).then(|| Witness::Scalar(lhs - rhs)),
        });
    }

    pub fn equal_subspace(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        lhs: &Subspace,
        rhs: &Subspace,
    ) {
        let passed = lhs == rhs;
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            passed,
            witness: (!passed).then(|| Witness::Note(format!("{lhs:?} != {rhs:?}"))),
        });
    }

    pub fn condition(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
        passed: bool,
        witness: impl FnOnce() -> Witness,
    ) {
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            passed,
            witness: (!passed).then(witness),
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, identity: impl Into<String>, witness: Witness) {
        self.checks.push(Check {
            name: name.into(),
            identity: identity.into(),
            passed: false,
            witness: Some(witness),
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{status} {:<40} {}", c.name, c.identity)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
