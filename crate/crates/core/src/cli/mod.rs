//! The `dihom` command line.
//!
//! Every verb produces a [`Report`] that renders as text, JSON or CSV. JSON reports
//! carry a `"schema"` key naming their layout (`dihom.homology.v1` and so on); the
//! layouts are listed in the README.

mod commands;
mod report;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::exactla::Field;
use crate::precubical::PrecubicalError;

pub use report::{Format, Report};

/// Exit code of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Input = 2,
    Internal = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(name = "dihom", version, about = "Directed homology of finite acyclic precubical sets")]
pub struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Highest homological degree reported.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict tables to one vertex pair, given as `s,e`.
    #[arg(long, global = true)]
    pub pair: Option<String>,
    /// Continue past a negative verdict where the computation still makes sense.
    #[arg(long, global = true)]
    pub force: bool,
    /// Reject subsets that are not face-closed instead of completing them.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the precubical identities and acyclicity of a JSON file.
    Validate { path: PathBuf },
    /// Homology dimensions per degree and vertex pair.
    Homology {
        path: PathBuf,
        /// Include the edge action matrices.
        #[arg(long)]
        actions: bool,
    },
    /// Relative homology and the long exact sequence of a pair.
    Relative {
        path: PathBuf,
        /// Subcomplex: inline JSON list of cell ids, or a file holding one.
        subset: String,
    },
    /// Good-cover check and the Mayer–Vietoris sequence.
    Mv { path: PathBuf, x1: String, x2: String },
    /// Eilenberg–Zilber maps and the Künneth dimension identity.
    Kunneth {
        x: PathBuf,
        y: PathBuf,
        /// Add the degree-0 size comparison of both sides.
        #[arg(long)]
        obstruction: bool,
    },
    /// Dimensions of the dual cochain complex.
    Cohomology { path: PathBuf },
    /// Write a standard set as JSON.
    Generate {
        #[arg(value_enum)]
        kind: GenKind,
        /// `n` for cube, disc and sphere; a sequence like `1,2,2` for realization;
        /// two file paths for tensor.
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Relative-pair verdict only.
    CheckPair { path: PathBuf, subset: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Point,
    Segment,
    Cube,
    Disc,
    Sphere,
    Realization,
    Domino,
    Tensor,
}

/// Settings shared by all verbs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub max_degree: usize,
    pub format: Format,
    pub pair: Option<(String, String)>,
    pub force: bool,
    pub strict: bool,
}

/// A failure that ends the run with an input or internal exit code.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: Status::Input, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_internal() { Status::Internal } else { Status::Input };
        Failure { status, message: e.to_string() }
    }
}

impl From<PrecubicalError> for Failure {
    fn from(e: PrecubicalError) -> Self {
        Failure::input(e.to_string())
    }
}

/// What a run printed and how it ended.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let field: Field = cli.field.parse().map_err(|e| Failure::input(format!("--field: {e}")))?;
        let pair = match &cli.pair {
            None => None,
            Some(p) => Some(commands::split_pair(p).ok_or_else(|| Failure::input("--pair expects s,e"))?),
        };
        Ok(RunConfig {
            field,
            max_degree: cli.max_degree,
            format: cli.format,
            pair,
            force: cli.force,
            strict: cli.strict,
        })
    }
}

/// Parses `args` (program name first) and runs the verb.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { Status::Input } else { Status::Ok };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: text }
            } else {
                Outcome { status, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut warnings = Vec::new();
    let result = RunConfig::from_cli(&cli).and_then(|cfg| {
        let report = commands::dispatch(&cli.command, &cfg, &mut warnings)?;
        Ok((report.render(cfg.format), report.status))
    });
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok((stdout, status)) => Outcome { status, stdout, stderr },
        Err(f) => {
            stderr.push_str(&format!("error: {f}\n"));
            Outcome { status: f.status, stdout: String::new(), stderr }
        }
    }
}
