mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xilam_core::Family;

/// Exact verification toolkit for the D_Xi / D_Lambda polynomial sequences.
#[derive(Parser, Debug)]
#[command(name = "xilam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an auxiliary or P-sequence.
    Gen(GenArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Isolate the real roots of one sequence member.
    Roots(RootsArgs),
    /// Threshold and consecutive interlacing verdicts for (c, d).
    Interlace(InterlaceArgs),
    /// Compare zeros of P_n with the limiting distribution.
    Dist(DistArgs),
    /// Residuals of the hypergeometric eigenfunctions.
    Eigen(EigenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Xi,
    Lambda,
    Both,
}

impl FamilyArg {
    pub fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::Xi => vec![Family::Xi],
            FamilyArg::Lambda => vec![Family::Lambda],
            FamilyArg::Both => Family::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SeqArgs {
    #[arg(long, value_enum, default_value = "xi")]
    pub family: FamilyArg,
    /// Use the auxiliary family instead of the P-sequence.
    #[arg(long)]
    pub aux: bool,
    /// Leading coefficient of P_1 = cx - d, as "num/den".
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    pub d: String,
    /// "paper", "ones" or "custom:v1,v2,..." (repeated cyclically).
    #[arg(long, default_value = "paper", allow_hyphen_values = true)]
    pub scaling: String,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long)]
    pub n: usize,
    /// Maximal isolating interval width, as "num/den".
    #[arg(long, default_value = "1/1099511627776")]
    pub width: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InterlaceArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Also check (P_n, P_{n+1}) for n up to this bound when d/c is in the window.
    #[arg(long, default_value_t = 0)]
    pub n_max: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// File for JSON, directory for CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EigenArgs {
    #[arg(long, value_enum, default_value = "xi")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub exponent: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c2: f64,
    /// Override the eigenvalue (default: the family's value for the exponent).
    #[arg(long, allow_hyphen_values = true)]
    pub eigenvalue: Option<f64>,
    #[arg(long, default_value_t = 23)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Roots(a) => commands::roots(&a),
        Command::Interlace(a) => commands::interlace(&a),
        Command::Dist(a) => commands::dist(&a),
        Command::Eigen(a) => commands::eigen(&a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
