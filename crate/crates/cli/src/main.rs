mod request;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, ValueEnum};

use request::{CommandRequest, Format, Inputs, Options, RequestFile, Subcommand};
use run::CliError;

/// Catalytic LOCC conversion toolkit: majorization checks, catalyst
/// filters, dimension bounds, exact grid search and conversion metrics.
///
/// Vectors are comma-separated decimals or fractions, e.g. `-p 0.4,7/20,0.15,0.1`.
/// Exit status: 0 computed, 2 input error, 3 precondition violation.
#[derive(Parser, Debug)]
#[command(name = "elocc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON file with any part of a request (`inputs`, `options`); flags win.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,

    /// Print the resolved request as JSON instead of running it.
    #[arg(long, global = true)]
    dry_run: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Debug, Default)]
struct Pair {
    /// Source Schmidt vector.
    #[arg(short, value_delimiter = ',', allow_hyphen_values = true)]
    p: Option<Vec<String>>,
    /// Target Schmidt vector.
    #[arg(short, value_delimiter = ',', allow_hyphen_values = true)]
    q: Option<Vec<String>>,
}

#[derive(Args, Debug, Default)]
struct Catalyst {
    /// Catalyst Schmidt vector.
    #[arg(short, value_delimiter = ',', allow_hyphen_values = true)]
    r: Option<Vec<String>>,
}

#[derive(Args, Debug, Default)]
struct Grid {
    /// Catalyst dimension.
    #[arg(short)]
    k: Option<usize>,
    /// Grid denominator; defaults per k, overridable with ELOCC_DEFAULT_D<k> or ELOCC_DEFAULT_D.
    #[arg(short = 'D', long)]
    denominator: Option<u64>,
    /// Allow zero catalyst entries on the grid.
    #[arg(long)]
    include_zeros: bool,
    /// Worker threads for the search pool.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct FilterToggles {
    /// Skip the subset part of the sequence family.
    #[arg(long)]
    no_subsets: bool,
    /// Cap on sequences enumerated by the sequence family.
    #[arg(long)]
    t2_cap: Option<usize>,
}

#[derive(clap::Subcommand, Debug)]
enum Command {
    /// Nielsen convertibility and classification of a pair.
    Check(Pair),
    /// Excess set L of a pair.
    Lset(Pair),
    /// Whether p reaches every target of Schmidt rank t.
    Reach {
        #[arg(short, value_delimiter = ',', allow_hyphen_values = true)]
        p: Option<Vec<String>>,
        #[arg(short)]
        t: Option<usize>,
        /// Tail length for the sufficient tail-sum condition.
        #[arg(short)]
        s: Option<usize>,
    },
    /// Necessary-condition battery on a catalyst, or a grid scan without -r.
    Filters {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        catalyst: Catalyst,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        toggles: FilterToggles,
        /// Extra two-level check at c1,c2,s.
        #[arg(long, value_delimiter = ',')]
        two_level: Option<Vec<usize>>,
    },
    /// Catalyst dimension lower bound and the two-dimensional ratio interval.
    Bound(Pair),
    /// Exhaustive catalyst search on a grid.
    Search {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        toggles: FilterToggles,
        /// Disable filter pruning.
        #[arg(long)]
        no_filters: bool,
        /// Stop after this many catalysts.
        #[arg(long)]
        max_results: Option<usize>,
    },
    /// Smallest catalyst dimension found by grid search.
    Mindim {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(short = 'D', long)]
        denominator: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Conversion probability, plain and with a catalyst.
    Pmax {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        catalyst: Catalyst,
    },
    /// Majorization distance of the catalysed pair.
    Distance {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        catalyst: Catalyst,
    },
    /// Probability, distance and oracle agreement.
    Prop2 {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        catalyst: Catalyst,
    },
    /// Mixed-state protocol check for an ensemble given with --input.
    Protocol {
        /// Emit the step-by-step trace.
        #[arg(long)]
        trace: bool,
    },
    /// Empirical comparison of two filters against the oracle.
    CompareFilters {
        /// Number of random triples.
        #[arg(short = 'n', long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn flag(b: bool) -> Option<bool> {
    b.then_some(true)
}

impl Command {
    fn into_request(self) -> Result<CommandRequest, CliError> {
        let mut inputs = Inputs::default();
        let mut options = Options::default();
        let set_pair = |inputs: &mut Inputs, pair: Pair| {
            inputs.p = pair.p;
            inputs.q = pair.q;
        };
        let set_grid = |options: &mut Options, grid: Grid| {
            options.k = grid.k;
            options.denominator = grid.denominator;
            options.include_zeros = flag(grid.include_zeros);
            options.workers = grid.workers;
        };
        let set_toggles = |options: &mut Options, t: FilterToggles| {
            options.no_subsets = flag(t.no_subsets);
            options.t2_cap = t.t2_cap;
        };
        let subcommand = match self {
            Command::Check(pair) => {
                set_pair(&mut inputs, pair);
                Subcommand::Check
            }
            Command::Lset(pair) => {
                set_pair(&mut inputs, pair);
                Subcommand::Lset
            }
            Command::Reach { p, t, s } => {
                inputs.p = p;
                inputs.t = t;
                inputs.s = s;
                Subcommand::Reach
            }
            Command::Filters {
                pair,
                catalyst,
                grid,
                toggles,
                two_level,
            } => {
                set_pair(&mut inputs, pair);
                inputs.r = catalyst.r;
                set_grid(&mut options, grid);
                set_toggles(&mut options, toggles);
                options.two_level = match two_level.as_deref() {
                    None => None,
                    Some(&[c1, c2, s]) => Some((c1, c2, s)),
                    Some(_) => return Err(CliError::input("USAGE_ERROR", "--two-level takes exactly c1,c2,s")),
                };
                Subcommand::Filters
            }
            Command::Bound(pair) => {
                set_pair(&mut inputs, pair);
                Subcommand::Bound
            }
            Command::Search {
                pair,
                grid,
                toggles,
                no_filters,
                max_results,
            } => {
                set_pair(&mut inputs, pair);
                set_grid(&mut options, grid);
                set_toggles(&mut options, toggles);
                options.no_filters = flag(no_filters);
                options.max_results = max_results;
                Subcommand::Search
            }
            Command::Mindim {
                pair,
                k_max,
                denominator,
                workers,
            } => {
                set_pair(&mut inputs, pair);
                options.k_max = k_max;
                options.denominator = denominator;
                options.workers = workers;
                Subcommand::Mindim
            }
            Command::Pmax { pair, catalyst } => {
                set_pair(&mut inputs, pair);
                inputs.r = catalyst.r;
                Subcommand::Pmax
            }
            Command::Distance { pair, catalyst } => {
                set_pair(&mut inputs, pair);
                inputs.r = catalyst.r;
                Subcommand::Distance
            }
            Command::Prop2 { pair, catalyst } => {
                set_pair(&mut inputs, pair);
                inputs.r = catalyst.r;
                Subcommand::Prop2
            }
            Command::Protocol { trace } => {
                options.trace = flag(trace);
                Subcommand::Protocol
            }
            Command::CompareFilters { samples, seed } => {
                options.samples = samples;
                options.seed = seed;
                Subcommand::CompareFilters
            }
        };
        Ok(CommandRequest {
            subcommand,
            inputs,
            options,
        })
    }
}

fn read_request_file(path: &PathBuf) -> Result<RequestFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input("IO_ERROR", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input("PARSE_ERROR", format!("{}: {e}", path.display())))
}

fn resolve(cli: Cli) -> Result<(CommandRequest, bool), CliError> {
    let mut req = cli.command.into_request()?;
    if let Some(f) = cli.format {
        req.options.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    if let Some(path) = &cli.input {
        let file = read_request_file(path)?;
        if let Some(sub) = file.subcommand {
            if sub != req.subcommand {
                return Err(CliError::input(
                    "SUBCOMMAND_MISMATCH",
                    format!("input file is for {}, not {}", sub.name(), req.subcommand.name()),
                ));
            }
        }
        req.merge_file(file, cli.format.is_some());
    }
    Ok((req, cli.dry_run))
}

fn fail(e: &CliError) -> ExitCode {
    let body = serde_json::json!({ "error": e });
    println!("{}", serde_json::to_string_pretty(&body).expect("error object serializes"));
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // help and version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return fail(&CliError::input("USAGE_ERROR", e.kind().to_string()));
        }
    };
    let (req, dry_run) = match resolve(cli) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    if dry_run {
        println!("{}", serde_json::to_string_pretty(&req).expect("request serializes"));
        return ExitCode::SUCCESS;
    }
    match run::run(&req) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
