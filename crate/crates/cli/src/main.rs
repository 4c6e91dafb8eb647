//! `chnlab` command-line driver.
//!
//! Exit codes: 0 when the check passes, 1 when it fails, 2 on malformed
//! input (bad flags, unreadable or ill-shaped operator files, parse errors).

mod commands;
mod operand;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Largest quantum degree accepted on the command line.
pub const K_CAP: usize = 4;
/// Largest classical degree accepted on the command line.
pub const CLASSICAL_K_CAP: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "chnlab",
    version,
    about = "Exact checks for quantum matrix algebras and Cayley-Hamilton-Newton identities"
)]
pub struct Cli {
    /// Output format of the report.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Extra indeterminates allowed in operator files, e.g. `b,y`. `q` is always declared.
    #[arg(long, value_delimiter = ',', global = true)]
    pub params: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural checks of braid matrices.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Derived operators.
    #[command(subcommand)]
    Derive(DeriveCmd),
    /// Constructed operators.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Twist R by F: R^F = F R F^-1 (and R^FF).
    Twist(PairArgs),
    /// Identity verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Print a builtin operator in the JSON file format.
    Export(ExportArgs),
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Braid relation R1 R2 R1 = R2 R1 R2.
    Yb(SingleArgs),
    /// Hecke condition with eigenvalues q and -1/q, and the projector split.
    Hecke(SingleArgs),
    /// Compatibility of a pair (R, F).
    Compatible(PairArgs),
}

#[derive(Subcommand, Debug)]
pub enum DeriveCmd {
    /// The matrix D with Tr_2(F D_2) = I.
    Dmat(TwistOnly),
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// The q-antisymmetrizer A_k of a Hecke R.
    Antisym(AntisymArgs),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Classical Newton and Cayley-Hamilton-Newton identities on a random integer matrix.
    Classical(ClassicalArgs),
    /// Quantum Cayley-Hamilton-Newton identities by ideal membership.
    Chn(ChnArgs),
    /// Agreement of the general identity with the RTT (F = P) or RLRL (F = R) one.
    Bridge(BridgeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SingleArgs {
    /// Builtin name (e.g. `standard:2`) or JSON operator file.
    #[arg(long)]
    pub r: String,
    /// Dimension, for builtins given without one and to validate files.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub r: String,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct TwistOnly {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct AntisymArgs {
    #[arg(long)]
    pub r: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// Tensor degree of the antisymmetrizer.
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    /// Builtin name to export.
    #[arg(long)]
    pub r: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassicalKind {
    Wedge,
    Symmetric,
    Newton,
}

#[derive(Args, Debug, Clone)]
pub struct ClassicalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Highest degree checked; defaults to n + 1.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = ClassicalKind::Wedge)]
    pub flavor: ClassicalKind,
    /// Entries are drawn uniformly from [-bound, bound].
    #[arg(long, default_value_t = 9)]
    pub bound: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Rtt,
    Rlrl,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Overline,
    Underline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Randomized,
    /// Randomized when n > 2 and the degree is at least 3, exact otherwise.
    Auto,
}

#[derive(Args, Debug, Clone)]
pub struct MembershipArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ChnArgs {
    #[arg(long, value_enum)]
    pub algebra: Algebra,
    #[arg(long)]
    pub r: String,
    /// Defaults to `permutation:N` for rtt and to R for rlrl; required for general.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degrees 1..=k are checked; defaults to min(n + 1, 4).
    #[arg(long, alias = "kmax")]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = VariantArg::Overline)]
    pub variant: VariantArg,
    #[command(flatten)]
    pub membership: MembershipArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BridgeArgs {
    #[arg(long)]
    pub r: String,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, alias = "kmax")]
    pub k: Option<usize>,
    #[command(flatten)]
    pub membership: MembershipArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
