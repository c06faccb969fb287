use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bcspec::io::{self as bio, ScalarJson};
use bcspec::oracle::{self, Rng, SpectrumProfile};
use bcspec::spectra::{self, ModifiedCase};
use bcspec::verify::{self, Fault, VerifyConfig};
use bcspec::{Bicomplex, BicomplexOperator, Complex, Error, Tolerances};

mod report;

use report::{
    DecomposeReport, Envelope, MatrixDecomposition, ModifiedReport, Render, ScalarDecomposition, SearchReport,
    SpectrumOut, SumReport,
};

#[derive(Parser, Debug)]
#[command(name = "bcspec", version, about = "Spectra of bicomplex operators e1*T1 + e2*T2")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Relative singularity tolerance.
    #[arg(long, global = true, env = "BCSPEC_TOL", default_value_t = bcspec::DEFAULT_SINGULAR_TOL)]
    tol: f64,

    /// Eigenvalue clustering and membership tolerance.
    #[arg(long, global = true, default_value_t = bcspec::DEFAULT_CLUSTER_TOL)]
    cluster_tol: f64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    KernelSign,
}

#[derive(Args, Debug)]
struct Range {
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    n_min: u64,

    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Idempotent, cartesian and real forms of a scalar or matrix.
    Decompose {
        /// JSON file, inline JSON, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Component spectra and the modified spectrum of an operator.
    Spectrum {
        #[arg(long)]
        input: String,
    },
    /// Modified-eigenvalue verdict and eigenspace for a bicomplex kappa.
    Modified {
        #[arg(long)]
        input: String,
        #[arg(long)]
        kappa: String,
    },
    /// Eigenspace for a bicomplex kappa or a complex lambda `[re, im]`.
    Eigenspace {
        #[arg(long)]
        input: String,
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda")]
        kappa: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Run the seeded theorem suites.
    Verify {
        #[command(flatten)]
        range: Range,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
    /// Is ME(kappa) + ME(kappa2) direct? Explicit pair or random search.
    ExploreSum {
        #[arg(long, required_unless_present = "search")]
        input: Option<String>,
        #[arg(long, required_unless_present = "search")]
        kappa: Option<String>,
        #[arg(long, required_unless_present = "search")]
        kappa2: Option<String>,
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        range: Range,
    },
}

/// Exit statuses.
const EXIT_SUITE_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ConvergenceFailure { .. } => EXIT_NO_CONVERGENCE,
                _ => EXIT_INVALID,
            })
        }
    }
}

fn read_input(arg: &str) -> Result<String, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    let mut text = String::new();
    let res = if arg == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(arg).map(|s| text = s)
    };
    res.map_err(|e| Error::Parse {
        context: format!("input {arg}"),
        message: e.to_string(),
    })?;
    Ok(text)
}

fn operator(arg: &str) -> Result<BicomplexOperator, Error> {
    let t = bio::parse_operator(&read_input(arg)?)?;
    t.dim()?;
    Ok(t)
}

fn range_config(range: &Range, seed: u64, tol: Tolerances) -> Result<VerifyConfig, Error> {
    if range.n_min > range.n_max {
        return Err(Error::Parse {
            context: "--n-min/--n-max".into(),
            message: format!("empty range {}..={}", range.n_min, range.n_max),
        });
    }
    Ok(VerifyConfig {
        seed,
        trials: range.trials as usize,
        n_min: range.n_min as usize,
        n_max: range.n_max as usize,
        tol,
        fault: None,
    })
}

fn emit<T: serde::Serialize + Render>(common: &Common, command: &str, result: &T) -> Result<(), Error> {
    let tolerances = Tolerances::new(common.tol, common.cluster_tol)?;
    let env = Envelope {
        command,
        tolerances,
        seed: common.seed,
        result,
    };
    let mut text = match common.format {
        Format::Json => serde_json::to_string_pretty(&env).expect("reports serialize"),
        Format::Text => env.text(),
    };
    text.push('\n');
    let io_err = |e: io::Error| Error::Parse {
        context: "output".into(),
        message: e.to_string(),
    };
    match &common.output {
        Some(path) => fs::write(path, text).map_err(io_err),
        None => io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let common = &cli.common;
    let tol = Tolerances::new(common.tol, common.cluster_tol)?;
    match &cli.command {
        Command::Decompose { input } => {
            let text = read_input(input)?;
            let report = match bio::parse_scalar(&text) {
                Ok(x) => DecomposeReport::Scalar(Box::new(ScalarDecomposition::new(x, tol.singular))),
                Err(scalar_err) => match bio::parse_matrix(&text) {
                    Ok(m) => DecomposeReport::Matrix(MatrixDecomposition::new(&m, tol.singular)),
                    Err(_) => return Err(scalar_err),
                },
            };
            emit(common, "decompose", &report)?;
        }
        Command::Spectrum { input } => {
            let t = operator(input)?;
            emit(common, "spectrum", &SpectrumOut::new(&t, &tol)?)?;
        }
        Command::Modified { input, kappa } => {
            let t = operator(input)?;
            let kappa = bio::parse_scalar(&read_input(kappa)?)?;
            emit(common, "modified", &ModifiedReport::new(&t, kappa, None, &tol)?)?;
        }
        Command::Eigenspace { input, kappa, lambda } => {
            let t = operator(input)?;
            let (kappa, lambda) = match (kappa, lambda) {
                (Some(k), _) => (bio::parse_scalar(&read_input(k)?)?, None),
                (None, Some(l)) => {
                    let z = bio::parse_complex(l)?;
                    (Bicomplex::from_complex(z)?, Some(z))
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            emit(common, "eigenspace", &ModifiedReport::new(&t, kappa, lambda, &tol)?)?;
        }
        Command::Verify { range, inject_fault } => {
            let mut cfg = range_config(range, common.seed, tol)?;
            cfg.fault = inject_fault.map(|FaultArg::KernelSign| Fault::KernelSign);
            let report = verify::run(&cfg);
            emit(common, "verify", &report)?;
            if !report.all_passed {
                for s in report.suites.iter().filter(|s| !s.ok()) {
                    for f in &s.failures {
                        eprintln!(
                            "FAILED {} seed={} trial={} n={}: {}",
                            s.name, cfg.seed, f.trial, f.n, f.detail
                        );
                    }
                }
                return Ok(EXIT_SUITE_FAILED);
            }
        }
        Command::ExploreSum {
            input,
            kappa,
            kappa2,
            search,
            range,
        } => {
            if *search {
                let cfg = range_config(range, common.seed, tol)?;
                let fixed = input.as_deref().map(operator).transpose()?;
                emit(common, "explore-sum", &search_sums(fixed.as_ref(), &cfg)?)?;
            } else {
                let (Some(input), Some(k1), Some(k2)) = (input, kappa, kappa2) else {
                    unreachable!("clap requires the explicit arguments")
                };
                let t = operator(input)?;
                let a = bio::parse_scalar(&read_input(k1)?)?;
                let b = bio::parse_scalar(&read_input(k2)?)?;
                let sum = spectra::eigenspace_sum(&t, a, b, &tol)?;
                emit(common, "explore-sum", &SumReport::new(a, b, sum))?;
            }
        }
    }
    Ok(0)
}

/// How a random pair is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// Same minus component from U1, different plus components.
    SharedMinus,
    /// Same plus component from U2, different minus components.
    SharedPlus,
    /// Independent members of the modified spectrum.
    Independent,
}

/// A modified eigenvalue drawn from one of the two cylinders.
fn draw_member(rng: &mut Rng, report: &bcspec::SpectrumReport) -> Bicomplex {
    let pick = |rng: &mut Rng, set: &bcspec::EigenSet| set.values()[rng.below(set.len())].0;
    if rng.coin() {
        Bicomplex::new(pick(rng, &report.upsilon1), rng.complex_in(3.0)).expect("finite")
    } else {
        Bicomplex::new(rng.complex_in(3.0), pick(rng, &report.upsilon2)).expect("finite")
    }
}

fn draw_pair(rng: &mut Rng, report: &bcspec::SpectrumReport, kind: PairKind) -> (Bicomplex, Bicomplex) {
    let pick = |rng: &mut Rng, set: &bcspec::EigenSet| set.values()[rng.below(set.len())].0;
    match kind {
        PairKind::SharedMinus => {
            let k1 = pick(rng, &report.upsilon1);
            (
                Bicomplex::new(k1, rng.complex_in(3.0)).expect("finite"),
                Bicomplex::new(k1, rng.complex_in(3.0)).expect("finite"),
            )
        }
        PairKind::SharedPlus => {
            let k2 = pick(rng, &report.upsilon2);
            (
                Bicomplex::new(rng.complex_in(3.0), k2).expect("finite"),
                Bicomplex::new(rng.complex_in(3.0), k2).expect("finite"),
            )
        }
        PairKind::Independent => (draw_member(rng, report), draw_member(rng, report)),
    }
}

fn search_sums(fixed: Option<&BicomplexOperator>, cfg: &VerifyConfig) -> Result<SearchReport, Error> {
    let kinds = [PairKind::SharedMinus, PairKind::SharedPlus, PairKind::Independent];
    let span = cfg.n_max - cfg.n_min + 1;
    let mut out = SearchReport::new(cfg, fixed.is_some());
    for trial in 0..cfg.trials {
        let mut rng = Rng::stream(cfg.seed, trial as u64);
        let t = match fixed {
            Some(t) => t.clone(),
            None => {
                let n = cfg.n_min + trial % span;
                let profile = SpectrumProfile::ALL[rng.below(SpectrumProfile::ALL.len())];
                oracle::random_operator(&mut rng, n, profile).operator
            }
        };
        let report = spectra::component_spectra(&t, &cfg.tol)?;
        let kind = kinds[trial % kinds.len()];
        let (a, b) = draw_pair(&mut rng, &report, kind);
        let cases: (ModifiedCase, ModifiedCase) = (
            report.modified_case(a).expect("drawn from the spectrum"),
            report.modified_case(b).expect("drawn from the spectrum"),
        );
        let sum = spectra::eigenspace_sum(&t, a, b, &cfg.tol)?;
        out.record(trial, t.rows(), kind, cases, a, b, sum);
    }
    Ok(out)
}

pub(crate) fn complex_pair(z: Complex) -> [f64; 2] {
    [z.re, z.im]
}

pub(crate) fn scalar_json(x: Bicomplex) -> ScalarJson {
    ScalarJson::from_bicomplex(x)
}
