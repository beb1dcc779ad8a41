//! `fusionring`: check, analyse, combine and enumerate fusion rings.
//!
//! Ring arguments are paths to ring documents, or `catalog:<name>` for a
//! built-in ring (`catalog:k_3` for a member of the rank-2 family).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fusionring::catalog;
use fusionring::enumerate::{enumerate, PointedFilter, SearchSpec};
use fusionring::format::{self, DocumentError};
use fusionring::fusion::FusionRing;

use report::{Failure, Report, Status};

#[derive(Parser)]
#[command(name = "fusionring", version, about = "Fusion rings with exact arithmetic")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a ring document and verify the fusion-ring identities.
    Check { file: String },
    /// Frobenius-Perron dimensions.
    Fpdim { file: String },
    /// Universal grading.
    Grading { file: String },
    /// Formal codegrees.
    Codegrees { file: String },
    /// Run the Drinfeld-center induction obstruction.
    Obstruct { file: String },
    /// Deligne product of two rings.
    Product {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Look for an isomorphism between two rings.
    Iso { a: String, b: String },
    /// Enumerate fusion rings with coefficients at most the bound.
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        max_coeff: u32,
        #[arg(long)]
        self_dual: bool,
        #[arg(long)]
        nontrivial_grading: bool,
        #[arg(long, conflicts_with = "pointed")]
        non_pointed: bool,
        #[arg(long)]
        pointed: bool,
        /// Drop rings with an obstructed proper fusion subring.
        #[arg(long)]
        unobstructed_subrings: bool,
        /// Drop rings that are obstructed themselves.
        #[arg(long)]
        unobstructed: bool,
        /// Node budget; defaults to FUSIONRING_NODE_BUDGET or 10^9.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a built-in ring.
    Catalog {
        name: String,
        /// Parameter of the rank-2 family `k_n`.
        #[arg(long)]
        n: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(arg: &str) -> Result<FusionRing, Failure> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog::by_name(name, None).ok_or_else(|| Failure::usage(format!("unknown catalog ring {name:?}")));
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure::usage(format!("{arg}: {e}")))?;
    format::parse(&text).map_err(|e| match e {
        DocumentError::Parse(p) => Failure::parse(arg, p),
        DocumentError::Validation(v) => Failure::invalid(arg, v),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Result<Box<dyn Report>, Failure> {
    Ok(match cmd {
        Command::Check { file } => Box::new(report::check(&load(&file)?)),
        Command::Fpdim { file } => Box::new(report::fpdim(&load(&file)?)?),
        Command::Grading { file } => Box::new(report::grading(&load(&file)?)?),
        Command::Codegrees { file } => Box::new(report::codegrees(&load(&file)?)?),
        Command::Obstruct { file } => Box::new(report::obstruct(&load(&file)?)),
        Command::Product { a, b, output } => {
            let p = FusionRing::deligne_product(&load(&a)?, &load(&b)?);
            if let Some(path) = &output {
                write(path, &format::serialize(&p))?;
            }
            Box::new(report::document(&p, output))
        }
        Command::Iso { a, b } => Box::new(report::iso(&load(&a)?, &load(&b)?)),
        Command::Enumerate {
            rank,
            max_coeff,
            self_dual,
            nontrivial_grading,
            non_pointed,
            pointed,
            unobstructed_subrings,
            unobstructed,
            budget,
            output,
        } => {
            let mut spec = SearchSpec::new(rank, max_coeff);
            spec.require_self_dual = self_dual;
            spec.require_nontrivial_grading = nontrivial_grading;
            spec.require_unobstructed_subrings = unobstructed_subrings;
            spec.require_unobstructed = unobstructed;
            spec.pointed = match (pointed, non_pointed) {
                (true, _) => PointedFilter::Pointed,
                (_, true) => PointedFilter::NonPointed,
                _ => PointedFilter::Any,
            };
            if let Some(b) = budget {
                spec.node_budget = b;
            }
            let result = enumerate(&spec).map_err(|e| Failure::usage(e.to_string()))?;
            let rep = report::enumeration(&result, output.as_deref());
            if let Some(dir) = &output {
                fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
                for (ring, entry) in result.rings.iter().zip(&rep.rings) {
                    write(&dir.join(format!("{}.ring", entry.hash)), &format::serialize(ring))?;
                }
                write(&dir.join("index.tsv"), &rep.index())?;
            }
            Box::new(rep)
        }
        Command::Catalog { name, n, output } => {
            let ring = catalog::by_name(&name, n).ok_or_else(|| {
                Failure::usage(format!("unknown catalog ring {name:?}; known: {}", catalog::NAMES.join(", ")))
            })?;
            if let Some(path) = &output {
                write(path, &format::serialize(&ring))?;
            }
            Box::new(report::document(&ring, output))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok(rep) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&rep.json()).expect("reports serialize"));
            } else {
                print!("{}", rep.text());
            }
            rep.status().into()
        }
        Err(f) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&f.json()).expect("reports serialize"));
            } else {
                eprint!("{}", f.text());
            }
            f.status.into()
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}
