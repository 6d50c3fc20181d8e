//! `homspec`: exact decompositions of permutation modules, election
//! reports, Laplacian spectra and crested/wreath product reports.

mod crest;
mod decompose;
mod election;
mod render;
mod spectrum;
mod wreath;

use clap::{Parser, Subcommand, ValueEnum};
use homspec::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "homspec", version, about = "Exact harmonic analysis on finite homogeneous spaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isotypic decomposition of M^a with a Wielandt audit.
    Decompose {
        #[arg(long, value_delimiter = ',', required = true)]
        composition: Vec<usize>,
        #[arg(long, value_enum)]
        chain: Option<decompose::ChainKind>,
        /// Report only this isotypic block.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<usize>>,
    },
    /// Two decompositions of president/director ballot counts.
    Election {
        /// CSV with header `president,director,count`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Eigenvalues of a sum of urn-swap Laplacians on M^{a,b,c}.
    Spectrum {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        /// Urn pairs, e.g. `12` or `12,13,23`.
        #[arg(long, default_value = "12")]
        pairs: String,
    },
    /// Suborbits, ideal partitions and crested product orbits from a JSON spec.
    Crest {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Multiplicity tables for the exponentiation action of a wreath product.
    Wreath {
        #[arg(long, value_enum)]
        variant: wreath::Variant,
        /// Rows `label:multiplicity:dimension,...` (c2, general).
        #[arg(long)]
        reps: Option<String>,
        /// Dimensions of the constituents of L(Y) (free).
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<u64>>,
        /// Action of G on X as JSON (free).
        #[arg(long)]
        outer: Option<PathBuf>,
        /// Action of F on Y as JSON; enables the brute-force orbit check.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Expected total dimension (general).
        #[arg(long)]
        total: Option<u128>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::ResourceCap(_) => 3,
        Error::ContractViolation(_) | Error::Arithmetic(_) => 4,
    }
}

fn execute(cli: &Cli) -> homspec::Result<render::Report> {
    match &cli.command {
        Command::Decompose { composition, chain, lambda } => decompose::run(composition, *chain, lambda.as_deref()),
        Command::Election { input, n } => election::run(input, *n),
        Command::Spectrum { shape, pairs } => spectrum::run(shape, &spectrum::parse_pairs(pairs)?),
        Command::Crest { spec } => crest::run(spec),
        Command::Wreath { variant, reps, dims, outer, inner, total } => wreath::run(&wreath::WreathArgs {
            variant: *variant,
            reps: reps.as_deref(),
            dims: dims.as_deref(),
            outer: outer.as_deref(),
            inner: inner.as_deref(),
            total: *total,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
        Format::Table => report.table,
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
