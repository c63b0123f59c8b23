use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use onsager_cli::{run_suite, CliError, SuiteConfig, Target};
use onsager_core::io::{export_model, parse_model};
use onsager_core::model::{build_model, solve_phi_with_limit};
use onsager_core::verify::Suite;
use onsager_core::{ParamSet, Scalar, SpectralParams, TDModel};

#[derive(Parser)]
#[command(
    name = "onsager",
    version,
    about = "Exact verification of q-Onsager module identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, allow_hyphen_values = true)]
    q: Scalar,
    #[arg(long, allow_hyphen_values = true)]
    a: Scalar,
    #[arg(long, allow_hyphen_values = true)]
    b: Scalar,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print one JSON record per check.
    Verify {
        /// TOML batch file.
        #[arg(long, conflicts_with_all = ["d", "model"])]
        config: Option<PathBuf>,
        /// Model file to verify.
        #[arg(long, conflicts_with = "d")]
        model: Option<PathBuf>,
        #[arg(long, requires_all = ["q", "a", "b"])]
        d: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Scalar>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Scalar>,
        /// Split sequence, comma separated; solved for when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi: Option<Vec<Scalar>>,
        /// Suites to run (overrides the config file).
        #[arg(long = "suite", num_args = 1..)]
        suites: Vec<String>,
        /// Report path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Run targets concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Print rational split sequences for the given parameters, one per line.
    SolvePhi {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3)]
        limit: usize,
    },
    /// Build a model and write it as a model file.
    Export {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi: Option<Vec<Scalar>>,
        /// Write both matrices instead of the split sequence.
        #[arg(long)]
        matrices: bool,
        /// Destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a model file, build the model and print it back in canonical form.
    Import { path: PathBuf },
}

/// Command failures past argument parsing.
enum Failure {
    Setup(CliError),
    Checks,
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Setup(e)
    }
}

fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn model_from(p: &ParamArgs, phi: Option<Vec<Scalar>>) -> Result<TDModel, Failure> {
    let s = SpectralParams::new(p.d, p.q.clone(), p.a.clone(), p.b.clone()).map_err(usage)?;
    let phi = match phi {
        Some(phi) => phi,
        None => solve_phi_with_limit(s.d(), s.q(), s.a(), s.b(), 1)
            .map_err(usage)?
            .into_iter()
            .next()
            .ok_or_else(|| usage("no rational split sequence found"))?,
    };
    let ps = ParamSet::from_spectral(s, phi).map_err(usage)?;
    build_model(&ps).map_err(|e| {
        eprintln!("error: {e}");
        Failure::Checks
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    config: Option<PathBuf>,
    model: Option<PathBuf>,
    d: Option<usize>,
    q: Option<Scalar>,
    a: Option<Scalar>,
    b: Option<Scalar>,
    phi: Option<Vec<Scalar>>,
    suites: Vec<String>,
    output: Option<PathBuf>,
    parallel: bool,
) -> Result<(), Failure> {
    let suite_list = (!suites.is_empty())
        .then(|| Suite::parse_list(&suites).map_err(CliError::Usage))
        .transpose()?;
    let mut cfg = match (config, model, d) {
        (Some(path), _, _) => SuiteConfig::load(&path)?,
        (None, Some(path), _) => SuiteConfig::new(vec![Target::from_file(&path)?], Suite::ALL.to_vec())?,
        (None, None, Some(d)) => {
            let (q, a, b) = (q.expect("required"), a.expect("required"), b.expect("required"));
            SuiteConfig::new(vec![Target::params(d, q, a, b, phi)], Suite::ALL.to_vec())?
        }
        (None, None, None) => return Err(usage("give --config, --model or --d/--q/--a/--b").into()),
    };
    if let Some(s) = suite_list {
        cfg.suites = s;
    }
    if output.is_some() {
        cfg.output = output;
    }
    cfg.parallel |= parallel;

    let report = run_suite(&cfg);
    let mut out = open_output(cfg.output.as_ref())?;
    let target = cfg.output.clone().unwrap_or_else(|| "<stdout>".into());
    report.write_jsonl(&mut out).map_err(io_err(&target))?;
    out.flush().map_err(io_err(&target))?;
    eprintln!("{}", report.summary());
    for f in report.failures() {
        eprintln!("FAIL {} :: {}", f.target, f.check);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            config,
            model,
            d,
            q,
            a,
            b,
            phi,
            suites,
            output,
            parallel,
        } => verify(config, model, d, q, a, b, phi, suites, output, parallel),
        Command::SolvePhi { params: p, limit } => {
            let found = solve_phi_with_limit(p.d, &p.q, &p.a, &p.b, limit).map_err(usage)?;
            for phi in &found {
                let toks: Vec<String> = phi.iter().map(Scalar::to_string).collect();
                println!("{}", toks.join(" "));
            }
            if found.is_empty() {
                eprintln!("no rational split sequence found");
                return Err(Failure::Checks);
            }
            Ok(())
        }
        Command::Export {
            params,
            phi,
            matrices,
            out,
        } => {
            let mut model = model_from(&params, phi)?;
            if matrices {
                model = TDModel::from_matrices(model.params().clone(), model.a().clone(), model.astar().clone(), None)
                    .map_err(usage)?;
            }
            let text = export_model(&model);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(io_err(&path))?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Import { path } => {
            let text = std::fs::read_to_string(&path).map_err(io_err(&path))?;
            let source = parse_model(&text).map_err(|source| CliError::Model {
                path: path.clone(),
                source,
            })?;
            let model = source.into_model().map_err(|e| {
                eprintln!("error: {}: {e}", path.display());
                Failure::Checks
            })?;
            print!("{}", export_model(&model));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Setup(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::EXIT_CODE)
        }
    }
}
