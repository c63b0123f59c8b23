//! Executes a [`SuiteConfig`] and collects one record per check.

use std::io::Write;
use std::time::Instant;

use onsager_core::io::ModelSource;
use onsager_core::model::{
    build_model, check_irreducible, check_qdg, find_invariant_subspace, solve_phi, split_form_matrices,
};
use onsager_core::verify::{verify_model, Suite};
use onsager_core::{Error, Matrix, ParamSet, Report, Scalar, SpectralParams, TDModel, Witness};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{SuiteConfig, Target, TargetSpec};

/// Suite name used for entries produced while building a target's model.
pub const INPUT_SUITE: &str = "input";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub target: String,
    pub suite: String,
    pub check: String,
    pub identity: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Wall time of the suite run that produced this check.
    pub micros: u64,
}

/// All records of a run, grouped by target in declared order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// One JSON object per line.
    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    pub fn summary(&self) -> String {
        let mut targets: Vec<&str> = self.records.iter().map(|r| r.target.as_str()).collect();
        targets.dedup();
        format!(
            "{} targets, {} checks, {} failed",
            targets.len(),
            self.records.len(),
            self.failures().count()
        )
    }
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Matrix(m) => json!({ "matrix": matrix_json(m) }),
        Witness::Scalar(s) => json!({ "scalar": s.to_string() }),
        Witness::Subspace(s) => json!({ "subspace": matrix_json(s.basis()) }),
        Witness::Note(n) => json!({ "note": n }),
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn push_report(out: &mut Vec<Record>, target: &str, suite: &str, rep: Report, micros: u64) {
    out.extend(rep.checks.into_iter().map(|c| Record {
        target: target.to_string(),
        suite: suite.to_string(),
        check: c.name,
        identity: c.identity,
        pass: c.passed,
        witness: c.witness.as_ref().map(witness_json),
        micros,
    }));
}

/// Why a target produced no model, plus whatever checks could still be run
/// on the raw data.
struct BuildFailure {
    report: Report,
}

impl BuildFailure {
    fn note(name: &str, identity: &str, msg: String) -> Self {
        let mut report = Report::new();
        report.fail(name, identity, Witness::Note(msg));
        BuildFailure { report }
    }

    /// Records the build error and runs the relations and irreducibility
    /// tests directly on the matrices, so the report still shows residuals.
    fn with_raw_checks(
        name: &str,
        identity: &str,
        err: &Error,
        a: &Matrix,
        astar: &Matrix,
        q: &Scalar,
        eigs: &[Scalar],
    ) -> Self {
        let mut f = Self::note(name, identity, err.to_string());
        match check_qdg(a, astar, q) {
            Ok(r) => f.report.extend(r),
            Err(e) => f
                .report
                .fail("qdg", "q-Dolan/Grady relations", Witness::Note(e.to_string())),
        }
        f.report.condition(
            "irreducible.algebra",
            "A and A* generate all of End(V)",
            a.shape() == astar.shape() && check_irreducible(a, astar),
            || Witness::Note("the generated algebra is proper".into()),
        );
        if a.shape() == astar.shape() && a.rows() == eigs.len() {
            let w = find_invariant_subspace(a, astar, eigs);
            f.report.condition(
                "irreducible.eigenvector_closure",
                "no A-eigenvector generates a proper invariant subspace",
                w.is_none(),
                || Witness::Subspace(w.clone().expect("failed")),
            );
        }
        f
    }
}

const PARAMS_IDENTITY: &str = "d >= 1; q, a, b nonzero; q^2 != 1; a^2, b^2 avoid q^(2j) for 1-d <= j <= d-1";
const PHI_IDENTITY: &str = "phi has d nonzero entries satisfying the defining relations";
const MODEL_IDENTITY: &str = "the pair is an irreducible split-form module with the given spectra";

fn spectral(d: usize, q: &Scalar, a: &Scalar, b: &Scalar) -> Result<SpectralParams, BuildFailure> {
    SpectralParams::new(d, q.clone(), a.clone(), b.clone())
        .map_err(|e| BuildFailure::note("input.params", PARAMS_IDENTITY, e.to_string()))
}

fn from_spectral(s: SpectralParams, phi: Option<Vec<Scalar>>) -> Result<TDModel, BuildFailure> {
    let phi = match phi {
        Some(phi) => phi,
        None => solve_phi(s.d(), s.q(), s.a(), s.b())
            .map_err(|e| BuildFailure::note("input.phi", PHI_IDENTITY, e.to_string()))?
            .into_iter()
            .next()
            .ok_or_else(|| {
                BuildFailure::note(
                    "input.phi",
                    PHI_IDENTITY,
                    "no rational split sequence found by the scan".into(),
                )
            })?,
    };
    let p = ParamSet::from_spectral(s, phi)
        .map_err(|e| BuildFailure::note("input.params", PARAMS_IDENTITY, e.to_string()))?;
    from_paramset(&p)
}

fn from_paramset(p: &ParamSet) -> Result<TDModel, BuildFailure> {
    build_model(p).map_err(|e| {
        let (a, astar) = split_form_matrices(p);
        let eigs = onsager_core::scalars::thetas(p.spectral());
        BuildFailure::with_raw_checks("input.model", MODEL_IDENTITY, &e, &a, &astar, p.q(), &eigs)
    })
}

fn resolve(spec: &TargetSpec) -> Result<TDModel, BuildFailure> {
    match spec {
        TargetSpec::Params { d, q, a, b, phi } => from_spectral(spectral(*d, q, a, b)?, phi.clone()),
        TargetSpec::File(ModelSource::Spectral(s)) => from_spectral(s.clone(), None),
        TargetSpec::File(ModelSource::Params(p)) => from_paramset(p),
        TargetSpec::File(ModelSource::Matrices { params, a, astar }) => {
            TDModel::from_matrices(params.clone(), a.clone(), astar.clone(), None).map_err(|e| {
                let eigs = onsager_core::scalars::thetas(params);
                BuildFailure::with_raw_checks("input.model", MODEL_IDENTITY, &e, a, astar, params.q(), &eigs)
            })
        }
    }
}

fn elapsed_micros(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX)
}

/// Records for one target: build failures under the `input` suite, otherwise
/// each requested suite in order.
pub fn run_target(target: &Target, suites: &[Suite]) -> Vec<Record> {
    let mut out = Vec::new();
    let start = Instant::now();
    let model = match resolve(&target.spec) {
        Ok(m) => m,
        Err(f) => {
            push_report(&mut out, &target.label, INPUT_SUITE, f.report, elapsed_micros(start));
            return out;
        }
    };
    for &suite in suites {
        let start = Instant::now();
        let rep = verify_model(&model, &[suite]);
        push_report(&mut out, &target.label, suite.name(), rep, elapsed_micros(start));
    }
    out
}

/// Runs every target; with `cfg.parallel` targets run concurrently but the
/// records still come out in declared order.
pub fn run_suite(cfg: &SuiteConfig) -> RunReport {
    let per_target: Vec<Vec<Record>> = if cfg.parallel {
        cfg.targets.par_iter().map(|t| run_target(t, &cfg.suites)).collect()
    } else {
        cfg.targets.iter().map(|t| run_target(t, &cfg.suites)).collect()
    };
    RunReport {
        records: per_target.into_iter().flatten().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Target {
        Target::params(
            1,
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            Some(vec![Scalar::one()]),
        )
    }

    #[test]
    fn golden_target_passes_every_suite() {
        let recs = run_target(&golden(), &Suite::ALL);
        assert!(recs.iter().all(|r| r.pass));
        for s in Suite::ALL {
            assert!(recs.iter().any(|r| r.suite == s.name()), "suite {s} ran");
        }
    }

    #[test]
    fn collision_is_a_validation_entry() {
        // d = 2, q = 2: a^2 = q^2 is excluded
        let t = Target::params(2, Scalar::from_int(2), Scalar::from_int(2), Scalar::from_int(5), None);
        let recs = run_target(&t, &Suite::ALL);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].check, "input.params");
        assert!(!recs[0].pass);
        let note = recs[0].witness.as_ref().unwrap()["note"].as_str().unwrap();
        assert!(note.contains("a^2 = q^2"), "{note}");
    }

    #[test]
    fn wrong_phi_reports_residuals() {
        let t = Target::params(
            2,
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(5),
            Some(vec![Scalar::one(), Scalar::one()]),
        );
        let recs = run_target(&t, &[Suite::Model]);
        assert_eq!(recs[0].check, "input.model");
        let qdg: Vec<&Record> = recs.iter().filter(|r| r.check.starts_with("qdg.")).collect();
        assert_eq!(qdg.len(), 2);
        assert!(qdg
            .iter()
            .any(|r| !r.pass && r.witness.as_ref().unwrap().get("matrix").is_some()));
    }

    #[test]
    fn witness_encoding() {
        let m = Matrix::from_ratios(&[&[(1, 2), (0, 1)]]);
        assert_eq!(witness_json(&Witness::Matrix(m)), json!({"matrix": [["1/2", "0"]]}));
        assert_eq!(
            witness_json(&Witness::Scalar(Scalar::from_int(-3))),
            json!({"scalar": "-3"})
        );
        assert_eq!(witness_json(&Witness::Note("x".into())), json!({"note": "x"}));
    }

    #[test]
    fn parallel_and_serial_agree() {
        let targets = vec![
            golden(),
            Target::params(2, Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(5), None),
            Target::params(2, Scalar::from_int(2), Scalar::from_int(2), Scalar::from_int(5), None),
        ];
        let mut cfg = SuiteConfig::new(targets, vec![Suite::Model, Suite::Lusztig]).unwrap();
        let strip =
            |r: RunReport| -> Vec<Record> { r.records.into_iter().map(|r| Record { micros: 0, ..r }).collect() };
        let serial = strip(run_suite(&cfg));
        cfg.parallel = true;
        assert_eq!(serial, strip(run_suite(&cfg)));
    }
}
