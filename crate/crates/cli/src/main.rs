use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use imexp_core::hyperseries::{ParamSet, SeriesControl};
use imexp_core::quad::QuadratureControl;
use imexp_core::verify::{self, VerifyConfig, SUITES};
use imexp_core::Complex64;

mod eval;
mod scalar;

use eval::{Engine, EvalInput, Function};
use scalar::{parse_complex, parse_finite};

#[derive(Parser, Debug)]
#[command(name = "imexp", version, about = "Incomplete exponential matrix functions: evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function on the matrices of a parameter file
    Eval(EvalArgs),
    /// Run verification suites on random matrix families
    Verify(VerifyArgs),
    /// List the verification suites and what each checks
    ListSuites,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    function: Function,
    /// Parameter file: {"A": .., "B": .., "E": [..], "F": [..]}
    #[arg(long)]
    params: PathBuf,
    #[arg(long, value_enum, default_value = "series")]
    engine: Engine,
    #[arg(long, value_parser = parse_finite)]
    x: Option<f64>,
    /// Series argument, "re" or "re+imi"; also accepted as --v or --z
    #[arg(long, visible_aliases = ["v", "z"], value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    t: Complex64,
    /// Pochhammer index, or derivative order for prq and gen-upper
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    lambda: Complex64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    /// Series truncation tolerance
    #[arg(long, value_parser = parse_finite, default_value = "1e-14")]
    tol: f64,
    #[arg(long, default_value_t = 5000)]
    max_terms: usize,
    /// Relative tolerance of the quadrature engine
    #[arg(long, value_parser = parse_finite, default_value = "1e-10")]
    quad_tol: f64,
    /// Write the result here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated suite names, or "all"
    #[arg(long, default_value = "all", value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, env = "IMEXP_SEED", default_value_t = 42)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Exit status for a failed command.
enum Failure {
    Config(anyhow::Error),
    Numerical(anyhow::Error),
}

impl Failure {
    fn classify(err: anyhow::Error) -> Self {
        use imexp_core::Error as E;
        match err.downcast_ref::<E>() {
            Some(
                E::ConvergenceFailure { .. } | E::QuadratureFailure(_) | E::SingularEndpoint(_) | E::Overflow(_),
            ) => Failure::Numerical(err),
            _ => Failure::Config(err),
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn read_params(path: &Path) -> Result<ParamSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let params: ParamSet = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    params.dim()?;
    Ok(params)
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let params = read_params(&args.params).map_err(Failure::Config)?;
    let input = EvalInput {
        x: args.x,
        t: args.t,
        n: args.n,
        lambda: args.lambda,
        k: args.k,
        series: SeriesControl { tol: args.tol, max_terms: args.max_terms, stall_window: 5 },
        quad: QuadratureControl { rel_tol: args.quad_tol, ..QuadratureControl::default() },
    };
    let out = eval::evaluate(args.function, args.engine, &params, &input).map_err(Failure::classify)?;
    let mut text = serde_json::to_string_pretty(&out).expect("result is serializable");
    text.push('\n');
    write_out(args.output.as_deref(), &text).map_err(Failure::Config)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let cfg = VerifyConfig { seed: args.seed, dims: args.dims.clone(), trials: args.trials };
    let report = verify::run(&args.suite, &cfg).map_err(|e| Failure::Config(e.into()))?;
    for s in &report.suites {
        eprintln!(
            "{:<38} {:>5}/{:<5} max residual {:>10} worst ratio {:>8} {:>9.1} ms",
            s.suite,
            s.summary.passed,
            s.summary.cases,
            s.summary.max_residual.map(|r| format!("{r:.2e}")).unwrap_or_else(|| "-".into()),
            s.summary.worst_ratio.map(|r| format!("{r:.3}")).unwrap_or_else(|| "-".into()),
            s.summary.runtime_ms,
        );
    }
    let text = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    };
    write_out(args.report.as_deref(), &text).map_err(Failure::Config)?;
    Ok(report.all_passed())
}

fn cmd_list_suites() -> Result<()> {
    let mut text = String::new();
    for s in SUITES {
        text.push_str(&format!("{}: {}\n", s.name, s.description));
        for c in s.checks {
            text.push_str(&format!("  {:<32} {}\n", c.name, c.claim.describe()));
        }
    }
    write_out(None, &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::ListSuites => cmd_list_suites().map(|()| true).map_err(Failure::Config),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: at least one verification case failed");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e:#}");
            ExitCode::from(3)
        }
    }
}
