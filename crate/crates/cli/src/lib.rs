//! `qheight`: command-line access to the exact Minkowski, continued fraction,
//! height, counting and classification routines.
//!
//! [`run`] takes the full argument vector and returns everything the process
//! would emit, so a run is a pure function of its arguments.

mod commands;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qheight_core::Error;

pub use render::Format;

const GRAMMAR: &str = "\
Input grammars:
  rational      p/q or p            e.g. 3/5, -7, 0/1
  surd          (P+sqrt(D))/Q       e.g. (-1+sqrt(2))/1, (1-sqrt(5))/2, sqrt(3)
  field element poly: c0,c1,..; coords: e0,e1,..; interval: lo,hi
                (the root of c0 + c1 x + .. isolated in [lo, hi], element e0 + e1 x + ..)
  matrix        a,b;c,d             acts as (a x + b)/(c x + d)
  grid          lo:hi or t1,t2,..   strictly increasing positive integers
  continued fraction  [a0; a1, a2] or [a0; a1, (p1, p2)] with a periodic block";

#[derive(Debug, Parser)]
#[command(name = "qheight", version, about = "Exact Minkowski ?-function, heights and point counts", after_help = GRAMMAR)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the primary output to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ?(x) for rationals and quadratic surds.
    #[command(allow_negative_numbers = true)]
    Qmark {
        /// Points to evaluate, one output record each.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Allow any real input, using ?(x + m) = ?(x) + m.
        #[arg(long)]
        extended: bool,
    },
    /// ?^-1(y) for rationals y in [0, 1].
    QmarkInverse {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Jacobi–Perron expansion of a vector, with its ?ⁿ image.
    Jp {
        /// Coordinates in [0, 1): rationals, surds or field elements.
        #[arg(required = true)]
        coords: Vec<String>,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
    },
    /// Heights of projective points, rational tuples and ?-images.
    Height(HeightArgs),
    /// Exact probes of ? near rational points and under unimodular maps.
    #[command(subcommand)]
    Probe(ProbeCommand),
    /// Counting function N(T) of a point population.
    Count(CountArgs),
    /// Fit log2 N against the three growth shapes.
    Fit(FitArgs),
    /// Counting regime from rank, Betti numbers or genus.
    Classify(ClassifyArgs),
    /// Continued fraction expansion and evaluation.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Linear-fractional action of an integer matrix on a surd.
    Moebius {
        #[arg(long)]
        matrix: String,
        theta: String,
        /// Read the matrix as the basis change (a + b x)/(c + d x).
        #[arg(long)]
        basis_change: bool,
    },
    /// Normal forms of rationals, dyadic rationals and projective points.
    #[command(subcommand)]
    Normalize(NormalizeCommand),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct HeightModeArgs {
    /// Integer coordinates of a projective point, e.g. 2,3,5.
    #[arg(long, allow_hyphen_values = true)]
    pub projective: Option<String>,
    /// Entries p1/q1,..,pn/qn of the point (1, p1/q1, .., pn/qn).
    #[arg(long, allow_hyphen_values = true)]
    pub tuple: Option<String>,
    /// Generators θ1..θn; the height of (1, ?ⁿ(θ)). Repeat for n > 1.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Vec<String>,
}

#[derive(Debug, Args)]
pub struct HeightArgs {
    #[command(flatten)]
    pub mode: HeightModeArgs,
    /// Rank carried with the generators (informational).
    #[arg(long, default_value_t = 1)]
    pub rank: u64,
    #[arg(long, default_value_t = 200)]
    pub max_steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum ProbeCommand {
    /// ?(g·θ) − ?(θ) and whether it is dyadic.
    Difference {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Read the matrix as the basis change (a + b x)/(c + d x).
        #[arg(long)]
        basis_change: bool,
    },
    /// Difference probes over all unimodular matrices with bounded entries.
    Scan {
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Surds to scan; defaults to the built-in ten-surd fixture.
        #[arg(long, allow_hyphen_values = true)]
        theta: Vec<String>,
    },
    /// |?(x + h) − ?(x − h)| / 2h for h = 2^-j.
    Derivative {
        #[arg(long)]
        x: String,
        /// Comma-separated exponents j.
        #[arg(long)]
        steps: String,
    },
    /// The dyadic term a digit prefix contributes to ?.
    Shift {
        /// Comma-separated digits b1,..,bN.
        prefix: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    Pairs,
    Denominators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeightModeArg {
    Parameter,
    Raw,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub grid: String,
    /// Case II count: numerator-denominator pairs or denominators only.
    #[arg(long, value_enum, default_value_t = CountKind::Pairs)]
    pub count: CountKind,
    #[arg(long, value_enum, default_value_t = HeightModeArg::Parameter)]
    pub height_mode: HeightModeArg,
    /// Append the fitted curve (needs at least four nonzero samples).
    #[arg(long, conflicts_with = "list")]
    pub fit: bool,
    /// List the points counted at the last grid value instead of the counts.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Samples as T:N pairs, e.g. 1:1,2:3,3:7,4:15.
    #[arg(long)]
    pub samples: String,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, conflicts_with = "genus")]
    pub n: Option<u32>,
    #[arg(long, requires = "n", conflicts_with_all = ["betti", "genus"])]
    pub rank: Option<u64>,
    /// Odd Betti numbers b1,b3,..,b_{2n-1}.
    #[arg(long, requires = "n", conflicts_with = "genus")]
    pub betti: Option<String>,
    #[arg(long)]
    pub genus: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum CfCommand {
    /// Expand a rational or surd.
    #[command(allow_negative_numbers = true)]
    Expand { input: String },
    /// Evaluate a finite or periodic continued fraction.
    #[command(allow_negative_numbers = true)]
    Eval { cf: String },
}

#[derive(Debug, Subcommand)]
pub enum NormalizeCommand {
    /// Reduce num/den to lowest terms with a positive denominator.
    #[command(allow_negative_numbers = true)]
    Rational { num: String, den: String },
    /// Write a dyadic rational as odd/2^k.
    Dyadic { value: String },
    /// Primitive representative with a positive leading coordinate.
    #[command(allow_negative_numbers = true)]
    Projective { coords: String },
}

/// Everything a run emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(error: &Error) -> Self {
        let code = if matches!(error, Error::Parse(_)) { 2 } else { 1 };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}: {error}\n", error.name()),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match commands::execute(&cli) {
        Ok(text) => match &cli.output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome::ok(String::new()),
                Err(e) => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: format!("error: io: {}: {e}\n", path.display()),
                },
            },
            None => Outcome::ok(text),
        },
        Err(e) => Outcome::failure(&e),
    }
}
