//! `pervarr`: variation matrices, irreducibility and factor counts for rank-one
//! local systems on the complement of a central line arrangement.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pervarr_core::sweep::DEFAULT_MAX_GRID;
use pervarr_core::FieldMode;

#[derive(Parser, Debug)]
#[command(name = "pervarr", version, about, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coefficient field. Inferred from the literals when omitted:
    /// `i` selects gaussian, `t<k>` selects symbolic.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the variation matrix M_n, its minor and the minor's determinant
    /// next to the closed form.
    Matrix {
        /// Comma-separated multipliers, e.g. `2,1/2,1` or `1+i,1-i`.
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: Option<String>,
        /// Number of lines; without `-a` this uses the generators t1..tn.
        #[arg(short = 'n')]
        n: Option<usize>,
    },
    /// Irreducibility verdict and composition-factor counts (numeric modes).
    Factors {
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
    },
    /// Run the identity checks and report PASS/FAIL per check.
    Verify {
        /// Largest n for the symbolic checks.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Exhaustive grid size: tiny (n<=3), small (n<=5), full (n<=8).
        #[arg(long, value_enum, default_value_t = GridSize::Small)]
        grid: GridSize,
        /// Seed for the random-point check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points per n for the numeric determinant check.
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Evaluate every point of a product grid.
    ///
    /// `--grid "1,2,1/2" -n 3` uses the same values on each of three lines;
    /// `--grid "1,2;1/2;3"` gives one value set per line.
    ///
    /// CSV columns: a, k, product, irreducible, c_closed, c_oracle.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Maximum number of grid points.
        #[arg(long, env = "PERVARR_MAX_GRID", default_value_t = DEFAULT_MAX_GRID)]
        max_grid: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rational,
    Gaussian,
    Symbolic,
}

impl From<Mode> for FieldMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rational => FieldMode::Rational,
            Mode::Gaussian => FieldMode::Gaussian,
            Mode::Symbolic => FieldMode::Symbolic,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSize {
    Tiny,
    Small,
    Full,
}

impl GridSize {
    pub fn nmax(self) -> usize {
        match self {
            GridSize::Tiny => 3,
            GridSize::Small => 5,
            GridSize::Full => 8,
        }
    }
}

/// Whether every identity checked by a command held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violated,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
