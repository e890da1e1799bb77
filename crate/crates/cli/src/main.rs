mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{run, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "splitcount",
    version,
    about = "Exact counts for polynomial matrices, splitting subspaces and centralizers over F_q"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Largest number of objects a brute-force enumeration may visit.
    #[arg(long, global = true, env = "SPLITCOUNT_BUDGET", default_value_t = splitcount::oracle::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for randomized steps (sampling in verify).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed forms only; uncovered cases exit with code 4.
    Closed,
    /// Brute-force enumeration only.
    Oracle,
    /// Closed form when one applies, otherwise enumeration.
    Auto,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Field order, or a full spec such as `q=9;modulus=x^2+1`.
    #[arg(long, default_value = "2")]
    pub q: String,
    /// Monic irreducible modulus for an extension field.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    /// Invariant factors, least to greatest, comma-separated: `1,x,x^2+x`.
    #[arg(long, conflicts_with = "type_", required_unless_present = "type_")]
    pub invariants: Option<String>,
    /// Similarity class type: `{(1,[2,1]),(2,[1])}`.
    #[arg(long = "type", id = "type_")]
    pub type_: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form of a polynomial matrix.
    Snf {
        #[command(flatten)]
        field: FieldArgs,
        /// Rows separated by `;`, entries by `,`: `x,1;0,x`.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        matrix: Option<String>,
        /// Read the matrix from a file, one row per line or `;`-separated.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        /// Also print unimodular A, B with A·P·B = D.
        #[arg(long)]
        witnesses: bool,
    },
    /// Number of matrices in M_q(n,k,d) with the given invariant factors.
    Mu {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        invariants: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Number of m-dimensional splitting subspaces of degree d.
    Sigma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Probability that m random vectors generate V under the truncated Krylov map.
    Kappa {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Order of the centralizer in GL_N(F_q).
    Centralizer {
        #[command(flatten)]
        field: FieldArgs,
        /// Invariant factors of the class.
        #[arg(long, group = "what")]
        invariants: Option<String>,
        /// Similarity class type.
        #[arg(long = "type", id = "type_", group = "what")]
        type_: Option<String>,
        /// An explicit matrix of element codes: `0,1;1,1`.
        #[arg(long, group = "what")]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Whether a splitting subspace exists.
    Exists {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Number of coprime n-tuples of monic degree-d polynomials.
    Coprime {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Tables over whole parameter slices.
    #[command(subcommand)]
    Table(TableCommand),
    /// Compare closed forms with brute force over a grid.
    Verify {
        /// Field orders, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        /// Largest ambient dimension md.
        #[arg(long, default_value_t = 4)]
        max_md: usize,
        /// Run only these suites (repeatable).
        #[arg(long)]
        suite: Vec<String>,
        /// Samples per slice once a matrix space exceeds the exhaustive limit.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Matrix-space size above which suites sample.
        #[arg(long, default_value_t = 1 << 16)]
        exhaustive_limit: u64,
        /// List the suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableCommand {
    /// Histogram of invariant factors over M_q(n,k,d).
    Mu {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Oracle)]
        method: Method,
    },
    /// σ for every similarity class type of size md.
    Sigma {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Centralizer orders of every similarity class of N×N matrices.
    Centralizer {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Mismatch(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
