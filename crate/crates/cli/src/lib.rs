//! `unf`: run the exact decomposition pipeline on matrix files.
//!
//! Exit codes: 0 success with `verified = true`, 1 other failures, 2 malformed
//! input, 3 a failed identity, 4 a non-square or empty matrix.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use unf_core::corpus;

mod input;
mod pretty;
mod recheck;
mod report;

pub use input::{matrix_file, parse_matrix_file};
pub use pretty::render;
pub use recheck::{recheck, recheck_json};
pub use report::{
    run_command, AnalysisReport, BlockEntry, ChainEntry, DiagramEntry, FactorEntry, Options, Stage, YoungEntry,
};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Verification(Vec<String>),
    Shape(String),
    Engine(unf_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Engine(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Shape(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Verification(fails) if fails.is_empty() => write!(f, "verification failed"),
            CliError::Verification(fails) => write!(f, "verification failed: {}", fails.join("; ")),
            CliError::Shape(m) => write!(f, "shape error: {m}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<unf_core::Error> for CliError {
    fn from(e: unf_core::Error) -> Self {
        use unf_core::Error as E;
        match e {
            E::NotSquare { .. } | E::EmptyMatrix | E::DimensionMismatch(_) => CliError::Shape(e.to_string()),
            E::ParseRational(_) | E::RaggedRows { .. } => CliError::Parse(e.to_string()),
            other => CliError::Engine(other),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "unf",
    version,
    about = "Exact Jordan–Chevalley decomposition and uniform normal form of rational matrices",
    after_help = "Input: {\"matrix\": [[\"1\", \"1/2\"], [\"0\", \"2\"]]} with every entry a rational string.\n\
                  JSON output lists polynomial coefficients in ascending degree; --format pretty prints \
                  them in descending degree, e.g. λ^2 - 2λ + 1.\n\
                  Exit codes: 0 ok, 1 failure, 2 malformed input, 3 failed identity, 4 non-square or empty matrix."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every stage (same output as `uniform`).
    Analyze(StageArgs),
    /// Square-free part, multiplicity bound and semisimplicity test.
    Semisimple(StageArgs),
    /// Semisimple and nilpotent parts.
    Jc(StageArgs),
    /// Young diagrams of N on ker S and im S.
    Nilpotent(StageArgs),
    /// Normal-form basis P, block matrix B and factorization.
    Uniform(StageArgs),
    /// Re-verify a saved report against its input matrix.
    Check(CheckArgs),
    /// Write a seeded corpus of random integer matrices as input files.
    Corpus(CorpusArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Pretty,
}

#[derive(Args, Debug)]
pub struct StageArgs {
    /// Matrix file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Report file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Re-check every identity from the serialized report.
    #[arg(long)]
    pub verify: bool,
    /// Treat the input as N itself and skip the decomposition (nilpotent only).
    #[arg(long)]
    pub input_is_nilpotent: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// JSON report produced by one of the stage subcommands.
    #[arg(long)]
    pub report: PathBuf,
    /// The report was produced with --input-is-nilpotent.
    #[arg(long)]
    pub input_is_nilpotent: bool,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 6)]
    pub max_dim: usize,
    /// Directory to write `matrix_NNNN.json` files into.
    #[arg(long)]
    pub output: PathBuf,
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Serializes a report in the requested format, newline-terminated.
pub fn emit_report(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Pretty => render(r),
    }
}

fn run_stage(stage: Stage, args: &StageArgs) -> Result<(), CliError> {
    let a = parse_matrix_file(&read_input(args.input.as_deref())?)?;
    let opts = Options {
        verify: args.verify,
        input_is_nilpotent: args.input_is_nilpotent && stage == Stage::Nilpotent,
    };
    let report = run_command(stage, opts, &a)?;
    write_output(args.output.as_deref(), &emit_report(&report, args.format))?;
    if report.verified {
        Ok(())
    } else {
        Err(CliError::Verification(Vec::new()))
    }
}

fn run_check(args: &CheckArgs) -> Result<(), CliError> {
    let a = parse_matrix_file(&read_input(Some(&args.input))?)?;
    let json = fs::read_to_string(&args.report).map_err(|e| CliError::Io(format!("{}: {e}", args.report.display())))?;
    let failures = recheck_json(&a, &json, args.input_is_nilpotent)?;
    if failures.is_empty() {
        println!("ok");
        Ok(())
    } else {
        Err(CliError::Verification(failures))
    }
}

fn run_corpus(args: &CorpusArgs) -> Result<(), CliError> {
    if args.max_dim == 0 {
        return Err(CliError::Shape("--max-dim must be at least 1".into()));
    }
    fs::create_dir_all(&args.output).map_err(|e| CliError::Io(format!("{}: {e}", args.output.display())))?;
    for (i, m) in corpus::integer_corpus(args.seed, args.count, args.max_dim).iter().enumerate() {
        let path = args.output.join(format!("matrix_{i:04}.json"));
        fs::write(&path, matrix_file(m)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze(a) => run_stage(Stage::Analyze, a),
        Command::Semisimple(a) => run_stage(Stage::Semisimple, a),
        Command::Jc(a) => run_stage(Stage::Jc, a),
        Command::Nilpotent(a) => run_stage(Stage::Nilpotent, a),
        Command::Uniform(a) => run_stage(Stage::Uniform, a),
        Command::Check(a) => run_check(a),
        Command::Corpus(a) => run_corpus(a),
    }
}

/// Parses `args`, runs the command, reports errors on stderr and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("unf: {e}");
            e.exit_code()
        }
    }
}
