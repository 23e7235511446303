//! Command-line front end. Reports go to standard output as JSON, a one-line
//! summary to standard error.

mod commands;
mod input;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::budget::Budget;
use crate::error::Error;
use crate::report::{AnalysisReport, ErrorReport, InputDigest, Status};

#[derive(Debug, Parser)]
#[command(
    name = "mediankit",
    version,
    about = "Median spaces from finite weighted pocsets"
)]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Print a built-in fixture in its file format and exit. Prefix with
    /// `system:` or `shift:` for the chain-system fixtures.
    #[arg(long, value_name = "NAME")]
    pub dump_fixture: Option<String>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Where the input comes from: a built-in fixture or a JSON file.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

/// A halfspace pair, either as `--pair h,k` or as `--h h --k k`.
#[derive(Debug, Clone, Args)]
pub struct Pair {
    #[arg(long, value_name = "H,K", conflicts_with_all = ["h", "k"])]
    pub pair: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pocset axioms and list every violation.
    Validate(Source),
    /// Enumerate the points.
    Points(Source),
    /// Median of three points, each a comma-separated list of halfspaces.
    Median {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Distance between two points and the halfspaces separating them.
    Distance {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Largest family of pairwise transverse walls.
    Rank(Source),
    /// Split into irreducible factors.
    Decompose(Source),
    /// Iterated barycentric subdivision with its projection to the input.
    Subdivide {
        #[command(flatten)]
        src: Source,
        #[arg(short = 'n', long = "times", default_value_t = 1)]
        n: usize,
    },
    /// Smallest point orbit of the action, checked against `2^rank`.
    Orbits(Source),
    /// Search for an element flipping a halfspace.
    Flip {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        halfspace: String,
        #[arg(long)]
        max_word_len: Option<usize>,
        /// Re-check the result from its serialized form.
        #[arg(long)]
        verify: bool,
    },
    /// Search for an element skewering a nested pair `h ⊆ k`.
    Skewer {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        max_word_len: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Facing tuple of pairwise disjoint halfspaces.
    Facing {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 3)]
        tuple_size: usize,
        /// Pairwise strongly separated.
        #[arg(long)]
        strong: bool,
        /// Grow a facing triple with group elements.
        #[arg(long)]
        upgrade: bool,
        /// First halfspace of the tuple.
        #[arg(long)]
        halfspace: Option<String>,
        #[arg(long)]
        max_word_len: Option<usize>,
    },
    /// Halfspace inside a sector of a transverse pair, or a product splitting.
    Sectors {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pair: Pair,
    },
    /// Ping-pong certificate that `a` and `b` generate a free group.
    FreeCert {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Pairs of points separated by every wall.
    Lineal(Source),
    /// Staged classification of the action.
    Classify(Source),
    /// Check a chain system and report its stabilization constants.
    UbsValidate(Source),
    /// Graph of minimal classes of a chain system.
    UbsGraph {
        #[command(flatten)]
        src: Source,
        /// Also write the graph in DOT format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Transfer characters of a shift map on the minimal classes.
    UbsChi {
        #[command(flatten)]
        src: Source,
        /// Shift map file; fixtures default to their built-in shift.
        #[arg(long, value_name = "FILE")]
        shift: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Acceptance {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Points(_) => "points",
            Command::Median { .. } => "median",
            Command::Distance { .. } => "distance",
            Command::Rank(_) => "rank",
            Command::Decompose(_) => "decompose",
            Command::Subdivide { .. } => "subdivide",
            Command::Orbits(_) => "orbits",
            Command::Flip { .. } => "flip",
            Command::Skewer { .. } => "skewer",
            Command::Facing { .. } => "facing",
            Command::Sectors { .. } => "sectors",
            Command::FreeCert { .. } => "free-cert",
            Command::Lineal(_) => "lineal",
            Command::Classify(_) => "classify",
            Command::UbsValidate(_) => "ubs-validate",
            Command::UbsGraph { .. } => "ubs-graph",
            Command::UbsChi { .. } => "ubs-chi",
            Command::Acceptance { .. } => "acceptance",
        }
    }
}

/// Result of one invocation, ready to print.
#[derive(Debug, Clone)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced before it is wrapped in a report.
pub(crate) struct Outcome {
    pub status: Status,
    pub verdict: serde_json::Value,
    pub summary: String,
    pub inputs: Vec<InputDigest>,
}

/// Exit status of a library error.
fn status_of(e: &Error) -> Status {
    match e {
        _ if e.is_inconclusive() => Status::Inconclusive,
        Error::Invalid(_) | Error::UnknownId(_) | Error::EmptyInput(_) => Status::InvalidInput,
        _ => Status::Negative,
    }
}

pub fn run(argv: &[String]) -> Output {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Usage.exit_code()
            } else {
                0
            };
            return Output {
                code,
                stdout: String::new(),
                stderr: e.render().to_string(),
            };
        }
    };
    if let Some(name) = &cli.dump_fixture {
        return match input::dump_fixture(name) {
            Some(text) => Output {
                code: 0,
                stdout: text + "\n",
                stderr: String::new(),
            },
            None => Output {
                code: Status::Usage.exit_code(),
                stdout: String::new(),
                stderr: format!("unknown fixture {name}\n"),
            },
        };
    }
    let Some(command) = cli.command else {
        return Output {
            code: Status::Usage.exit_code(),
            stdout: String::new(),
            stderr: "no command given\n".into(),
        };
    };
    let start = Instant::now();
    let mut report = AnalysisReport::new(argv.iter().skip(1).cloned().collect());
    let outcome = Budget::from_env().and_then(|b| commands::execute(&command, &b));
    let stderr = match outcome {
        Ok(o) => {
            report.status = o.status;
            report.verdict = o.verdict;
            report.inputs = o.inputs;
            format!("{}: {:?}: {}\n", command.name(), o.status, o.summary)
        }
        Err(e) => {
            report.status = status_of(&e);
            report.error = Some(ErrorReport {
                code: e.code().into(),
                message: e.to_string(),
            });
            format!("{}: {}: {e}\n", command.name(), e.code())
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Output {
        code: report.status.exit_code(),
        stdout: report.to_json() + "\n",
        stderr,
    }
}

/// Entry point of the binary; returns the exit code.
pub fn main() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let out = run(&argv);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
