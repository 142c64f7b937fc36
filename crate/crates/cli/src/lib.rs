//! Command-line front end for `hcplx`: text formats, reports, analysis commands and the
//! `check` property suite.
//!
//! Exit codes: `0` success, `1` unreadable or invalid input, `2` a failed invariant or
//! oracle comparison.

pub mod commands;
pub mod format;
pub mod report;
pub mod suite;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hcplx::linalg::Rational;
use hcplx::random::RandomSpec;

use commands::{CommandError, PerversityChoice};
use report::{Format, Report};
use suite::SuiteConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Structured,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Human => Format::Human,
            OutputFormat::Structured => Format::Structured,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "hcplx",
    version,
    about = "Exact finite Hilbert complexes, image cohomology and intersection homology"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Perversity: zero, top, lower-middle, upper-middle, or a table `label=v,…`.
    #[arg(long, global = true, value_parser = parse_perversity)]
    pub perversity: Option<PerversityChoice>,
    /// Weights `label=c,…` (rational c > 0) selecting the perversity p_g.
    #[arg(long, global = true, value_parser = parse_weight_table)]
    pub weights: Option<WeightTable>,
    /// Seed for the random-instance suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per suite.
    #[arg(long, global = true, default_value_t = 1000)]
    pub instances: usize,
    /// Maximum dimension of each space in random instances.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_dim: usize,
    /// Maximum length n of random complexes.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_len: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

fn parse_perversity(s: &str) -> Result<PerversityChoice, String> {
    s.parse()
}

/// Stratum weights `c_Y` from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable(pub Vec<(String, Rational)>);

fn parse_weight_table(s: &str) -> Result<WeightTable, String> {
    commands::parse_weights(s).map(WeightTable)
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Cohomology, harmonic spaces and Kodaira decomposition of a `.cplx` file.
    AnalyzeComplex { input: PathBuf },
    /// Image cohomology, five-way equivalence and Friedrichs identities of a `.pair` file.
    AnalyzePair { input: PathBuf },
    /// The intermediate complex of a `.pair` file, verified against the oracle.
    BuildIntermediate { input: PathBuf },
    /// Intersection homology, the dual-perversity image, duality and χ of a `.strat` file.
    Ih { input: PathBuf },
    /// The middle-degree pairing and signature of a `.strat` file.
    Signature { input: PathBuf },
    /// The full property suite.
    Check,
    /// Prints the canonical text of a built-in model.
    EmitModel { name: String },
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(message: String) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {message}\n"), code: 1 }
    }

    fn report(r: &Report, format: Format) -> Self {
        Self { stdout: r.render(format), stderr: String::new(), code: if r.passed() { 0 } else { 2 } }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Reads and parses a file, prefixing parse errors with the path.
fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, format::ParseError>) -> Result<T, String> {
    let text = read(path)?;
    parse(&text).map_err(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))
}

fn command_report(cfg: &RunConfig) -> Result<Report, String> {
    let cmd_err = |e: CommandError| e.to_string();
    let strat_perversity = |path: &Path| {
        let x = load(path, format::parse_strat)?;
        let p = commands::resolve_perversity(&x, cfg.perversity.as_ref(), cfg.weights.as_ref().map(|w| w.0.as_slice()))
            .map_err(cmd_err)?;
        Ok::<_, String>((x, p))
    };
    match &cfg.command {
        Command::AnalyzeComplex { input } => {
            commands::analyze_complex(&load(input, format::parse_complex)?).map_err(cmd_err)
        }
        Command::AnalyzePair { input } => commands::analyze_pair(&load(input, format::parse_pair)?).map_err(cmd_err),
        Command::BuildIntermediate { input } => {
            commands::build_intermediate(&load(input, format::parse_pair)?).map_err(cmd_err)
        }
        Command::Ih { input } => {
            let (x, p) = strat_perversity(input)?;
            commands::ih(&x, &p).map_err(cmd_err)
        }
        Command::Signature { input } => {
            let (x, p) = strat_perversity(input)?;
            commands::signature(&x, &p).map_err(cmd_err)
        }
        Command::Check => {
            let spec = RandomSpec { max_len: cfg.max_len, max_dim: cfg.max_dim };
            Ok(suite::check_report(&SuiteConfig { seed: cfg.seed, instances: cfg.instances, spec }).0)
        }
        Command::EmitModel { .. } => unreachable!("handled by run"),
    }
}

/// Executes one configured command.
pub fn run(cfg: &RunConfig) -> Outcome {
    if let Command::EmitModel { name } = &cfg.command {
        return match commands::emit_model(name) {
            Ok((_, text)) => Outcome { stdout: text, stderr: String::new(), code: 0 },
            Err(e) => Outcome::error(e.to_string()),
        };
    }
    match command_report(cfg) {
        Ok(r) => Outcome::report(&r, cfg.format.into()),
        Err(message) => Outcome::error(message),
    }
}
