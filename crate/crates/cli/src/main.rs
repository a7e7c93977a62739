mod commands;
mod render;

use std::io::{BufWriter, Write};
use std::panic::AssertUnwindSafe;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lgeuler::{Method, Word};

const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  self-check or consistency failure
  2  usage or parse error
  3  internal invariant violation

Environment:
  LGEULER_CACHE_SIZE  entries in the shared recursion cache (default 65536, 0 disables)";

#[derive(Parser, Debug)]
#[command(
    name = "lgeuler",
    version,
    about = "Local Euler obstructions of Schubert varieties in LG(n,2n)",
    after_help = EXIT_CODES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate e_{y,w} for one pair of words.
    Compute(ComputeArgs),
    /// Tabulate e_{y,w} over all pairs of one length.
    Table(TableArgs),
    /// Draw the decorated tree of a pair.
    Tree(TreeArgs),
    /// List or count the admissible labelings of a pair's tree.
    Labelings(LabelingsArgs),
    /// Decide whether e_{y,w} vanishes, with a certificate.
    Vanishing(PairArgs),
    /// Obstructions between rank strata of symmetric matrices.
    Symmetric(SymmetricArgs),
    /// Convert between symmetric partitions and words.
    Convert(ConvertArgs),
    /// Cross-check every method exhaustively on small words.
    Selfcheck(SelfcheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
    Ascii,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Recursion,
    Count,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Recursion => Method::Recursion,
            MethodArg::Count => Method::Count,
            MethodArg::Both => Method::Both,
        }
    }
}

fn word_arg(text: &str) -> Result<Word, String> {
    lgeuler::parse_word(text).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Lower word, letters a/b (or α/β)
    #[arg(long, value_parser = word_arg)]
    pub y: Word,
    /// Upper word, same length as y
    #[arg(long, value_parser = word_arg)]
    pub w: Word,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Recursion)]
    pub method: MethodArg,
    /// Print the recursion steps that produce the value
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Word length; implied by --w when given
    #[arg(long)]
    pub n: Option<usize>,
    /// Fix the upper word and list every y of its length
    #[arg(long, value_parser = word_arg)]
    pub w: Option<Word>,
    /// Largest accepted n
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Recursion)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TreeArgs {
    #[arg(long, value_parser = word_arg)]
    pub y: Word,
    #[arg(long, value_parser = word_arg)]
    pub w: Word,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct LabelingsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Only print the number of labelings
    #[arg(long)]
    pub count: bool,
    /// Abort enumeration after this many candidate labelings
    #[arg(long, default_value_t = 10_000_000)]
    pub max_states: u64,
}

#[derive(Args, Debug)]
pub struct SymmetricArgs {
    /// Matrix size
    #[arg(long)]
    pub n: usize,
    /// Rank of the smaller stratum; requires --j
    #[arg(long, requires = "j")]
    pub i: Option<usize>,
    /// Rank of the larger stratum; requires --i
    #[arg(long, requires = "i")]
    pub j: Option<usize>,
    /// Also evaluate each entry through the word pair, by both methods
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 64)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Symmetric partition, comma-separated parts, e.g. 7,6,6,3,3,3,1
    #[arg(long, conflicts_with = "word", requires = "n")]
    pub partition: Option<String>,
    /// Box size for --partition
    #[arg(long)]
    pub n: Option<usize>,
    /// Word to convert into a partition
    #[arg(long, value_parser = word_arg)]
    pub word: Option<Word>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SelfcheckArgs {
    /// Longest words checked exhaustively
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Longest words for the brute-force enumeration tier
    #[arg(long, default_value_t = 6)]
    pub max_enum_n: usize,
    /// Brute-force limit per pair
    #[arg(long, default_value_t = 10_000_000)]
    pub max_states: u64,
}

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Stdout was closed by the reader; not an error.
    Closed,
    Check(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Closed => 0,
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Closed => "",
            Failure::Check(m) | Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<lgeuler::Error> for Failure {
    fn from(e: lgeuler::Error) -> Failure {
        use lgeuler::Error::*;
        match e {
            MethodDisagreement { .. } | DomainMismatch { .. } | InvalidChildOrder { .. } => {
                Failure::Internal(e.to_string())
            }
            StateLimit { .. } => Failure::Usage(format!("{e}; raise --max-states")),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Internal(format!("write failed: {e}"))
        }
    }
}

pub type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = BufWriter::new(std::io::stdout().lock());
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(|| commands::run(cli.command, &mut out)))
        .unwrap_or_else(|_| Err(Failure::Internal("internal invariant violated".into())))
        .and_then(|()| out.flush().map_err(Failure::from));
    match outcome {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
