//! Batch front end: reads category, bundle, 2-functor and quiver files,
//! runs constructions and checks, and prints canonical reports.

pub mod report;
mod run;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fincat::{Budget, Error};

pub use report::{Check, InputRecord, OutputFormat, Report, ResultSummary};
pub use run::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Pie,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Iso,
    Equivalence,
}

#[derive(Parser, Debug)]
#[command(name = "fincat", version, about = "Finite category constructions and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are `KEY=VALUE` pairs; bare values fill the listed keys in order.
/// Category values are builtin names (`arrow`, `sets2`, `chain3`, ...) or
/// paths to category files.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a file against the laws of its format. Keys: file.
    Validate(Args),
    /// Product of two categories. Keys: A, B.
    Product(Args),
    /// Inserter of F, G from a bundle. Keys: bundle, F, G.
    Inserter(Args),
    /// Equifier of phi, psi from a bundle. Keys: bundle, phi, psi.
    Equifier(Args),
    /// Iso-inserter of F, G from a bundle. Keys: bundle, F, G.
    IsoInserter(Args),
    /// Pseudopullback of a cospan F, G from a bundle. Keys: bundle, F, G.
    Pseudopullback(Args),
    /// Functor category [C, K]. Keys: C, K.
    Funcat(Args),
    /// Representations of a quiver with relations in matrices over the field
    /// with p elements, dimensions at most d. Keys: Q, p (2), d (1).
    QuiverRep(Args),
    /// Lax limit of a 2-functor. Keys: H.
    Laxlim(Args),
    /// Oplax limit of a 2-functor. Keys: H.
    Oplaxlim(Args),
    /// Pseudolimit of a 2-functor. Keys: H.
    Pseudolim(Args),
    /// Weighted pseudolimit {W, H}; W defaults to the terminal weight.
    /// Keys: H, W.
    Weighted(Args),
    /// Chain factorization through a filtered presentation. Keys: bundle,
    /// presentation, case (equifier | inserter | analysis), then f, phi, psi
    /// (equifier); F, G, s, t, sigma, phi (inserter); F, G, object,
    /// context (analysis).
    Factorize(Args),
    /// Cofinality of a functor from a bundle. Keys: bundle, functor.
    Cofinal(Args),
    /// Filteredness of a category. Keys: C.
    Filtered(Args),
    /// Isomorphism or equivalence of two categories. Keys: A, B.
    Compare(Args),
}

#[derive(clap::Args, Debug, Clone)]
pub struct Args {
    /// KEY=VALUE inputs.
    pub params: Vec<String>,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Mode::Iso)]
    pub mode: Mode,
    /// Candidate budget for enumerations.
    #[arg(long, default_value_t = Budget::DEFAULT_CANDIDATES)]
    pub budget: u64,
    /// Budget for materialized composition tables.
    #[arg(long, default_value_t = Budget::DEFAULT_TABLE_ENTRIES)]
    pub table_budget: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Run twice and fail unless both reports are byte-identical.
    #[arg(long)]
    pub seedless: bool,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    pub timing: bool,
    /// Write the first constructed category to this path.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

impl Command {
    pub fn parts(&self) -> (&'static str, &Args) {
        use Command::*;
        match self {
            Validate(a) => ("validate", a),
            Product(a) => ("product", a),
            Inserter(a) => ("inserter", a),
            Equifier(a) => ("equifier", a),
            IsoInserter(a) => ("iso-inserter", a),
            Pseudopullback(a) => ("pseudopullback", a),
            Funcat(a) => ("funcat", a),
            QuiverRep(a) => ("quiver-rep", a),
            Laxlim(a) => ("laxlim", a),
            Oplaxlim(a) => ("oplaxlim", a),
            Pseudolim(a) => ("pseudolim", a),
            Weighted(a) => ("weighted", a),
            Factorize(a) => ("factorize", a),
            Cofinal(a) => ("cofinal", a),
            Filtered(a) => ("filtered", a),
            Compare(a) => ("compare", a),
        }
    }
}

/// Exit status for an error: 3 for exhausted budgets, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}
